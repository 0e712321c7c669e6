#include "algc/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace algc {

namespace {

constexpr double kMinGain = 1e-9;
constexpr double kBalanceSlack = 1e-9;

double node_mass(const WeightedGraph& g, NodeId i, bool by_count) {
  return by_count ? 1.0 : g.volume(i);
}

double total_mass(const WeightedGraph& g, bool by_count) {
  return by_count ? static_cast<double>(g.n()) : g.total_volume();
}

}  // namespace

void Bipartition::canonicalize() {
  if (!side.empty() && side[0] == 2)
    for (uint8_t& s : side) s = s == 1 ? 2 : 1;
}

double cut_cost(const WeightedGraph& g, const Bipartition& b) {
  if (b.side.size() != g.n()) throw std::invalid_argument("partition size mismatch");
  double acc = 0.0;
  for (const Edge& e : g.edges())
    if (b.side[e.u] != b.side[e.v]) acc += e.w;
  return acc;
}

void BisectionParams::validate() const {
  if (max_fm_passes < 0 || intermediate_passes < 0)
    throw std::invalid_argument("pass counts must be non-negative");
  coarsen.validate();
}

Bipartition solve_coarsest_bisection(const WeightedGraph& g, double alpha,
                                     bool by_count) {
  const NodeId n = g.n();
  if (n < 2) throw std::invalid_argument("bisection requires at least 2 nodes");
  if (n > 20) throw std::invalid_argument("exhaustive bisection requires n <= 20");
  const double cap = (1.0 + alpha) * total_mass(g, by_count) / 2.0 + kBalanceSlack;

  std::vector<double> mass(n);
  for (NodeId i = 0; i < n; ++i) mass[i] = node_mass(g, i, by_count);

  // node 0 fixed on side 1; mask bit t = node t+1 on side 2
  const uint64_t limit = 1ull << (n - 1);
  uint64_t best_mask = 1;  // at least node 1 on side 2 keeps both sides nonempty
  bool best_feasible = false;
  double best_cut = 0.0, best_maxside = 0.0;
  std::vector<uint8_t> side(n);
  for (uint64_t mask = 1; mask < limit; ++mask) {
    side[0] = 1;
    double m2 = 0.0;
    for (NodeId t = 1; t < n; ++t) {
      side[t] = (mask >> (t - 1)) & 1 ? 2 : 1;
      if (side[t] == 2) m2 += mass[t];
    }
    const double m1 = total_mass(g, by_count) - m2;
    const double maxside = std::max(m1, m2);
    const bool feasible = maxside <= cap;
    double cut = 0.0;
    for (const Edge& e : g.edges())
      if (side[e.u] != side[e.v]) cut += e.w;
    bool better;
    if (feasible != best_feasible) {
      better = feasible;
    } else if (feasible) {
      better = cut < best_cut;
    } else {
      better = maxside < best_maxside ||
               (maxside == best_maxside && cut < best_cut);
    }
    if (mask == 1 || better) {
      best_mask = mask;
      best_feasible = feasible;
      best_cut = cut;
      best_maxside = maxside;
    }
  }

  Bipartition b;
  b.alpha = alpha;
  b.side.assign(n, 1);
  for (NodeId t = 1; t < n; ++t)
    if ((best_mask >> (t - 1)) & 1) b.side[t] = 2;
  b.canonicalize();
  return b;
}

namespace {

struct FmState {
  const WeightedGraph& g;
  std::vector<uint8_t>& side;
  bool by_count;
  double cap;       // strict balance bound an accepted partition must meet
  double move_cap;  // transient bound during a pass: one extra node of slack
  std::vector<double> mass;
  double size[3] = {0, 0, 0};  // indexed by side label
  std::vector<double> gain;    // cut reduction if the node flips

  FmState(const WeightedGraph& g_, std::vector<uint8_t>& side_, bool by_count_,
          double cap_)
      : g(g_), side(side_), by_count(by_count_), cap(cap_), mass(g_.n()) {
    double max_mass = 0.0;
    for (NodeId i = 0; i < g.n(); ++i) {
      mass[i] = node_mass(g, i, by_count);
      size[side[i]] += mass[i];
      max_mass = std::max(max_mass, mass[i]);
    }
    move_cap = cap + max_mass;
    gain.assign(g.n(), 0.0);
    for (NodeId i = 0; i < g.n(); ++i) gain[i] = compute_gain(i);
  }

  bool strictly_balanced() const { return std::max(size[1], size[2]) <= cap; }

  double compute_gain(NodeId i) const {
    auto nbrs = g.neighbors(i);
    auto ws = g.neighbor_weights(i);
    double ext = 0.0, internal = 0.0;
    for (size_t t = 0; t < nbrs.size(); ++t) {
      if (side[nbrs[t]] != side[i]) ext += ws[t];
      else internal += ws[t];
    }
    return ext - internal;
  }

  bool is_boundary(NodeId i) const {
    for (NodeId j : g.neighbors(i))
      if (side[j] != side[i]) return true;
    return false;
  }

  bool feasible_move(NodeId v) const {
    const uint8_t from = side[v], to = from == 1 ? 2 : 1;
    if (size[from] - mass[v] <= 0.0) return false;  // source must stay nonempty
    return size[to] + mass[v] <= move_cap;
  }

  void apply_move(NodeId v) {
    const uint8_t from = side[v], to = from == 1 ? 2 : 1;
    side[v] = to;
    size[from] -= mass[v];
    size[to] += mass[v];
    auto nbrs = g.neighbors(v);
    auto ws = g.neighbor_weights(v);
    for (size_t t = 0; t < nbrs.size(); ++t) {
      const NodeId u = nbrs[t];
      if (side[u] == from) gain[u] += 2.0 * ws[t];
      else gain[u] -= 2.0 * ws[t];
    }
    gain[v] = -gain[v];
  }
};

struct HeapEntry {
  double gain;
  NodeId node;
  uint64_t stamp;
  bool operator<(const HeapEntry& o) const {
    if (gain != o.gain) return gain < o.gain;
    return node > o.node;  // lower id wins ties
  }
};

// One FM pass with best-prefix rollback; returns the (non-increased) cut.
double fm_pass(FmState& st, double cut) {
  const NodeId n = st.g.n();
  std::vector<uint64_t> stamp(n, 0);
  std::vector<uint8_t> locked(n, 0);
  std::priority_queue<HeapEntry> heap;
  uint64_t tick = 0;
  auto push = [&](NodeId v) {
    stamp[v] = ++tick;
    heap.push({st.gain[v], v, stamp[v]});
  };
  for (NodeId i = 0; i < n; ++i)
    if (st.is_boundary(i)) push(i);

  std::vector<NodeId> trail;
  std::vector<double> trail_cut;
  std::vector<uint8_t> trail_ok;  // strict balance holds after this prefix
  double cur = cut;
  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (locked[e.node] || stamp[e.node] != e.stamp) continue;
    if (!st.feasible_move(e.node)) {
      locked[e.node] = 1;  // skip for the rest of this pass
      continue;
    }
    locked[e.node] = 1;
    cur -= st.gain[e.node];
    st.apply_move(e.node);
    trail.push_back(e.node);
    trail_cut.push_back(cur);
    trail_ok.push_back(st.strictly_balanced() ? 1 : 0);
    for (NodeId u : st.g.neighbors(e.node))
      if (!locked[u]) push(u);
  }

  // keep the best strictly balanced prefix (the empty one included); moves
  // may overshoot the bound by one node mid-pass, accepted states may not
  size_t best_len = 0;
  double best = cut;
  for (size_t t = 0; t < trail.size(); ++t) {
    if (trail_ok[t] && trail_cut[t] < best - 1e-15) {
      best = trail_cut[t];
      best_len = t + 1;
    }
  }
  for (size_t t = trail.size(); t-- > best_len;) st.apply_move(trail[t]);
  return best;
}

}  // namespace

double fm_refine(const WeightedGraph& g, Bipartition& b, double alpha,
                 bool by_count, int max_passes) {
  if (b.side.size() != g.n()) throw std::invalid_argument("partition size mismatch");
  const double cap = (1.0 + alpha) * total_mass(g, by_count) / 2.0 + kBalanceSlack;

  {
    // repair an inherited imbalance first: move the cheapest nodes (boundary
    // preferred, then largest gain, then lowest id) off the heavy side
    FmState st(g, b.side, by_count, cap);
    for (uint32_t guard = 0; guard < g.n(); ++guard) {
      const uint8_t heavy = st.size[1] > st.size[2] ? 1 : 2;
      if (st.size[heavy] <= cap) break;
      NodeId pick = UINT32_MAX;
      bool pick_boundary = false;
      for (NodeId i = 0; i < g.n(); ++i) {
        if (st.side[i] != heavy) continue;
        if (st.size[heavy] - st.mass[i] <= 0.0) continue;
        const bool bd = st.is_boundary(i);
        if (pick == UINT32_MAX || (bd && !pick_boundary) ||
            (bd == pick_boundary && st.gain[i] > st.gain[pick])) {
          pick = i;
          pick_boundary = bd;
        }
      }
      if (pick == UINT32_MAX) break;
      st.apply_move(pick);
    }
  }

  // each pass works from an exactly recomputed cut; a pass that fails to
  // improve it is undone wholesale, so the cut sequence never increases
  for (int pass = 0; pass < max_passes; ++pass) {
    const double before = cut_cost(g, b);
    const std::vector<uint8_t> snapshot = b.side;
    FmState st(g, b.side, by_count, cap);
    fm_pass(st, before);
    const double after = cut_cost(g, b);
    if (after >= before - kMinGain) {
      if (after > before) b.side = snapshot;
      break;
    }
  }
  return cut_cost(g, b);
}

BisectionResult solve_bisection(const WeightedGraph& g, double alpha,
                                const BisectionParams& params) {
  params.validate();
  if (g.n() < 2) throw std::invalid_argument("bisection requires at least 2 nodes");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");

  CoarsenParams cp = params.coarsen;
  cp.coarsest_size = std::min<uint32_t>(std::max<uint32_t>(cp.coarsest_size, 2), 20);
  Hierarchy h = build_hierarchy(g, cp);

  // levels below the finest balance aggregated volume; the finest level
  // balances node counts
  const size_t finest = 0;
  Bipartition cur;
  if (h.coarsest().n() <= 20) {
    cur = solve_coarsest_bisection(h.coarsest(), alpha,
                                   /*by_count=*/h.levels() == 1);
  } else {
    // stalled hierarchy: split by id halves, then refine
    cur.alpha = alpha;
    cur.side.assign(h.coarsest().n(), 1);
    double acc = 0.0;
    const double half = total_mass(h.coarsest(), false) / 2.0;
    for (NodeId i = 0; i < h.coarsest().n(); ++i) {
      if (acc >= half) cur.side[i] = 2;
      acc += h.coarsest().volume(i);
    }
    if (cur.side.back() == 1) cur.side.back() = 2;
    fm_refine(h.coarsest(), cur, alpha, h.levels() == 1, params.max_fm_passes);
  }

  double cut_before_post = cut_cost(h.coarsest(), cur);
  for (size_t lvl = h.maps.size(); lvl-- > 0;) {
    const WeightedGraph& fine = h.graphs[lvl];
    const InterpolationMap& P = h.maps[lvl];
    Bipartition next;
    next.alpha = alpha;
    next.side.assign(fine.n(), 1);
    for (NodeId i = 0; i < fine.n(); ++i) {
      auto cs = P.row_cols(i);
      auto vs = P.row_vals(i);
      double m1 = 0.0, m2 = 0.0;
      for (size_t t = 0; t < cs.size(); ++t) {
        if (cur.side[cs[t]] == 1) m1 += vs[t];
        else m2 += vs[t];
      }
      next.side[i] = m1 >= m2 ? 1 : 2;
    }
    // guard against a side emptying out in projection
    bool has1 = false, has2 = false;
    for (uint8_t s : next.side) {
      has1 |= s == 1;
      has2 |= s == 2;
    }
    if (!has1 || !has2) next.side[0] = has1 ? 2 : 1;

    cur = std::move(next);
    if (lvl == finest) {
      cut_before_post = cut_cost(fine, cur);
      if (params.apply_post)
        fm_refine(fine, cur, alpha, /*by_count=*/true, params.max_fm_passes);
      else
        fm_refine(fine, cur, alpha, /*by_count=*/true, 0);  // repair only
    } else {
      fm_refine(fine, cur, alpha, /*by_count=*/false, params.intermediate_passes);
    }
  }

  cur.canonicalize();
  BisectionResult res;
  res.cut = cut_cost(h.graphs[finest], cur);
  res.cut_before_post = cut_before_post;
  res.partition = std::move(cur);
  return res;
}

void write_bipartition(std::ostream& out, const Bipartition& b, double cut) {
  for (NodeId i = 0; i < b.side.size(); ++i)
    out << i << ' ' << int(b.side[i]) << '\n';
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), cut);
  (void)ec;
  out << "cut " << std::string_view(buf, p - buf) << '\n';
}

}  // namespace algc
