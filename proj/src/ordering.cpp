#include "algc/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "algc/rng.hpp"

namespace algc {

namespace {

constexpr double kMinGain = 1e-9;

double edge_term(double w, double dx, int p) {
  return p == 1 ? w * std::fabs(dx) : w * dx * dx;
}

}  // namespace

void OrderingParams::validate() const {
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  if (intermediate_sweeps < 0 || max_post_sweeps < 0)
    throw std::invalid_argument("sweep counts must be non-negative");
  coarsen.validate();
}

Arrangement solve_coarsest_ordering(const WeightedGraph& g, int p) {
  if (g.n() > 10)
    throw std::invalid_argument("exhaustive ordering requires n <= 10");
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
  if (g.n() == 0) return {};

  std::vector<NodeId> perm(g.n());
  for (NodeId i = 0; i < g.n(); ++i) perm[i] = i;
  std::vector<double> pos(g.n());
  const auto cost_of = [&](const std::vector<NodeId>& seq) {
    double prefix = 0.0;
    for (NodeId node : seq) {
      const double v = g.volume(node);
      pos[node] = prefix + 0.5 * v;
      prefix += v;
    }
    double acc = 0.0;
    for (const Edge& e : g.edges()) acc += edge_term(e.w, pos[e.u] - pos[e.v], p);
    return acc;
  };
  std::vector<NodeId> best = perm;
  double best_cost = cost_of(perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    // a sequence and its reversal have identical cost
    if (g.n() > 1 && perm.front() > perm.back()) continue;
    const double c = cost_of(perm);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  }
  return Arrangement::from_sequence(g, std::move(best));
}

namespace {

// Relocation bookkeeping. Moving node v from rank r to rank r2 shifts the
// block of in-between nodes by +-volume(v); all other positions are
// untouched, so cost deltas only involve edges incident to the block.
struct Relocator {
  const WeightedGraph& g;
  Arrangement& a;
  int p;
  std::vector<uint32_t> epoch;  // scratch marks, sized n
  uint32_t cur_epoch = 0;
  std::vector<double> new_pos;  // valid where epoch matches

  explicit Relocator(const WeightedGraph& g_, Arrangement& a_, int p_)
      : g(g_), a(a_), p(p_), epoch(g_.n(), 0), new_pos(g_.n(), 0.0) {}

  // fills new_pos/epoch for the affected block and returns the cost delta
  double delta(NodeId v, uint32_t r, uint32_t r2) {
    ++cur_epoch;
    const double vol = g.volume(v);
    const uint32_t lo = std::min(r, r2), hi = std::max(r, r2);
    if (r2 > r) {
      for (uint32_t t = r + 1; t <= r2; ++t) {
        const NodeId u = a.seq[t];
        epoch[u] = cur_epoch;
        new_pos[u] = a.pos[u] - vol;
      }
      const NodeId anchor = a.seq[r2];
      epoch[v] = cur_epoch;
      new_pos[v] = a.pos[anchor] + 0.5 * g.volume(anchor) - 0.5 * vol;
    } else {
      for (uint32_t t = r2; t < r; ++t) {
        const NodeId u = a.seq[t];
        epoch[u] = cur_epoch;
        new_pos[u] = a.pos[u] + vol;
      }
      const NodeId anchor = a.seq[r2];
      epoch[v] = cur_epoch;
      new_pos[v] = a.pos[anchor] - 0.5 * g.volume(anchor) + 0.5 * vol;
    }
    double d = 0.0;
    for (uint32_t t = lo; t <= hi; ++t) {
      const NodeId u = a.seq[t];
      auto nbrs = g.neighbors(u);
      auto ws = g.neighbor_weights(u);
      for (size_t k = 0; k < nbrs.size(); ++k) {
        const NodeId x = nbrs[k];
        if (epoch[x] == cur_epoch && x < u) continue;  // both in block: count once
        const double xp_old = a.pos[x];
        const double xp_new = epoch[x] == cur_epoch ? new_pos[x] : xp_old;
        d += edge_term(ws[k], new_pos[u] - xp_new, p) -
             edge_term(ws[k], a.pos[u] - xp_old, p);
      }
    }
    return d;
  }

  void apply(NodeId v, uint32_t r, uint32_t r2) {
    delta(v, r, r2);  // refresh new_pos for this exact move
    const uint32_t lo = std::min(r, r2), hi = std::max(r, r2);
    for (uint32_t t = lo; t <= hi; ++t) a.pos[a.seq[t]] = new_pos[a.seq[t]];
    a.pos[v] = new_pos[v];
    if (r2 > r) {
      for (uint32_t t = r; t < r2; ++t) {
        a.seq[t] = a.seq[t + 1];
        a.rank[a.seq[t]] = t;
      }
    } else {
      for (uint32_t t = r; t > r2; --t) {
        a.seq[t] = a.seq[t - 1];
        a.rank[a.seq[t]] = t;
      }
    }
    a.seq[r2] = v;
    a.rank[v] = r2;
  }
};

}  // namespace

int refine_sweep(const WeightedGraph& g, Arrangement& a, int p, int window) {
  const uint32_t n = g.n();
  if (n < 2) return 0;
  const double cost_before = psum_cost(g, a, p);
  const std::vector<NodeId> snapshot = a.seq;

  Relocator rel(g, a, p);
  int moves = 0;
  for (NodeId v = 0; v < n; ++v) {
    const uint32_t r = a.rank[v];
    const uint32_t lo = r >= static_cast<uint32_t>(window) ? r - window : 0;
    const uint32_t hi = std::min(n - 1, r + static_cast<uint32_t>(window));
    double best_delta = -kMinGain;
    uint32_t best_r2 = r;
    for (uint32_t r2 = lo; r2 <= hi; ++r2) {
      if (r2 == r) continue;
      const double d = rel.delta(v, r, r2);
      if (d < best_delta) {
        best_delta = d;
        best_r2 = r2;
      }
    }
    if (best_r2 != r) {
      rel.apply(v, r, best_r2);
      ++moves;
    }
  }
  // bound incremental-position drift, then resynchronize
  std::vector<double> incremental = a.pos;
  a.recompute_positions(g);
  for (NodeId i = 0; i < n; ++i) {
    if (std::fabs(incremental[i] - a.pos[i]) >
        1e-6 * std::max(1.0, std::fabs(a.pos[i])))
      throw std::logic_error("incremental position drift exceeded 1e-6");
  }
  // a sweep that failed to improve the exact cost is undone wholesale, so
  // the cost sequence across sweeps never increases
  if (moves > 0 && psum_cost(g, a, p) > cost_before) {
    a = Arrangement::from_sequence(g, snapshot);
    return 0;
  }
  return moves;
}

namespace {

Arrangement interpolate_level(const WeightedGraph& fine,
                              const InterpolationMap& P,
                              const Arrangement& coarse) {
  std::vector<NodeId> order(fine.n());
  std::vector<double> provisional(fine.n(), 0.0);
  for (NodeId i = 0; i < fine.n(); ++i) {
    auto cs = P.row_cols(i);
    auto vs = P.row_vals(i);
    double x = 0.0;
    for (size_t t = 0; t < cs.size(); ++t) x += vs[t] * coarse.pos[cs[t]];
    provisional[i] = x;
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (provisional[a] != provisional[b]) return provisional[a] < provisional[b];
    return a < b;
  });
  return Arrangement::from_sequence(fine, std::move(order));
}

}  // namespace

Arrangement uncoarsen_ordering(const Hierarchy& h, const Arrangement& coarse,
                               int p, int sweeps, int window) {
  Arrangement cur = coarse;
  for (size_t lvl = h.maps.size(); lvl-- > 0;) {
    cur = interpolate_level(h.graphs[lvl], h.maps[lvl], cur);
    for (int s = 0; s < sweeps; ++s)
      if (refine_sweep(h.graphs[lvl], cur, p, window) == 0) break;
  }
  return cur;
}

namespace {

OrderingResult solve_connected(const WeightedGraph& g, int p,
                               const OrderingParams& params) {
  Hierarchy h = build_hierarchy(g, params.coarsen);

  Arrangement cur;
  if (h.coarsest().n() <= 10) {
    cur = solve_coarsest_ordering(h.coarsest(), p);
  } else {
    // stalled hierarchy: fall back to refining an identity order
    cur = Arrangement::identity(h.coarsest());
    for (int s = 0; s < 3; ++s)
      refine_sweep(h.coarsest(), cur, p, params.window);
  }

  for (size_t lvl = h.maps.size(); lvl-- > 0;) {
    cur = interpolate_level(h.graphs[lvl], h.maps[lvl], cur);
    if (lvl > 0) {
      for (int s = 0; s < params.intermediate_sweeps; ++s)
        if (refine_sweep(h.graphs[lvl], cur, p, params.window) == 0) break;
    }
  }

  OrderingResult res;
  res.cost_before_post = psum_cost(g, cur, p);
  if (params.apply_post) {
    for (int s = 0; s < params.max_post_sweeps; ++s)
      if (refine_sweep(g, cur, p, params.window) == 0) break;
  }
  res.cost_after_post = psum_cost(g, cur, p);
  res.arrangement = std::move(cur);
  return res;
}

}  // namespace

OrderingResult solve_ordering(const WeightedGraph& g, int p,
                              const OrderingParams& params) {
  params.validate();
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
  if (g.n() == 0) return {};

  const ComponentInfo comps = connected_components(g);
  if (comps.count <= 1) return solve_connected(g, p, params);

  // solve components independently, concatenate in component order
  OrderingResult total;
  std::vector<NodeId> seq;
  seq.reserve(g.n());
  for (uint32_t c = 0; c < comps.count; ++c) {
    const auto& members = comps.members[c];
    std::vector<NodeId> back(members.begin(), members.end());
    std::vector<uint32_t> fwd(g.n(), UINT32_MAX);
    for (uint32_t t = 0; t < back.size(); ++t) fwd[back[t]] = t;
    WeightedGraph::Builder b(static_cast<NodeId>(back.size()));
    for (const Edge& e : g.edges())
      if (comps.label[e.u] == c) b.add_edge(fwd[e.u], fwd[e.v], e.w);
    for (NodeId i : members) b.set_volume(fwd[i], g.volume(i));
    WeightedGraph sub = b.build();

    OrderingParams sub_params = params;
    sub_params.coarsen.relax.seed = mix_seed(params.coarsen.relax.seed, c);
    OrderingResult r = solve_connected(sub, p, sub_params);
    total.cost_before_post += r.cost_before_post;
    total.cost_after_post += r.cost_after_post;
    for (NodeId local : r.arrangement.seq) seq.push_back(back[local]);
  }
  total.arrangement = Arrangement::from_sequence(g, std::move(seq));
  return total;
}

}  // namespace algc
