#include "algc/coarsen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "algc/rng.hpp"

namespace algc {

const char* coupling_mode_name(CouplingMode m) {
  switch (m) {
    case CouplingMode::relaxation: return "relaxation";
    case CouplingMode::classical: return "classical";
    case CouplingMode::algebraic_only: return "algebraic-only";
  }
  return "?";
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::coarse_enough: return "coarse-enough";
    case StopReason::level_cap: return "level-cap";
    case StopReason::stalled: return "stalled";
  }
  return "?";
}

void CoarsenParams::validate() const {
  if (!(strength_threshold > 0.0) || !(strength_threshold < 1.0))
    throw std::invalid_argument("strength threshold Q must be in (0, 1)");
  if (!(volume_factor >= 1.0))
    throw std::invalid_argument("future-volume factor nu must be at least 1");
  if (!(coupling_filter > 0.0) || coupling_filter > 1.0)
    throw std::invalid_argument("coupling filter beta must be in (0, 1]");
  if (caliber < 1 || caliber > 2)
    throw std::invalid_argument("caliber must be 1 or 2");
  if (coarsest_size < 1)
    throw std::invalid_argument("coarsest size must be at least 1");
  if (!(stall_ratio > 0.0) || stall_ratio > 1.0)
    throw std::invalid_argument("stall ratio must be in (0, 1]");
  relax.validate();
}

EdgeStrengths edge_strengths(const WeightedGraph& g, CouplingMode mode,
                             const CouplingTable* table) {
  EdgeStrengths s;
  std::vector<double> w(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) w[e] = g.edges()[e].w;
  switch (mode) {
    case CouplingMode::relaxation:
      if (!table) throw std::invalid_argument("relaxation mode needs a coupling table");
      s.primary = table->coupling;
      s.pick = std::move(w);
      s.dual_ratio_test = true;
      break;
    case CouplingMode::classical:
      s.primary = w;
      s.pick = std::move(w);
      s.dual_ratio_test = true;
      break;
    case CouplingMode::algebraic_only:
      if (!table) throw std::invalid_argument("algebraic-only mode needs a coupling table");
      s.primary = table->coupling;
      s.pick = table->coupling;
      s.dual_ratio_test = false;
      break;
  }
  return s;
}

std::vector<double> future_volumes(const WeightedGraph& g,
                                   std::span<const double> primary) {
  std::vector<double> strength_sum(g.n(), 0.0);
  for (NodeId j = 0; j < g.n(); ++j) {
    auto eids = g.neighbor_edges(j);
    double acc = 0.0;
    for (EdgeId e : eids) acc += primary[e];
    strength_sum[j] = acc;
  }
  std::vector<double> fv(g.n());
  for (NodeId i = 0; i < g.n(); ++i) {
    double acc = g.volume(i);
    auto nbrs = g.neighbors(i);
    auto eids = g.neighbor_edges(i);
    for (size_t t = 0; t < nbrs.size(); ++t) {
      const NodeId j = nbrs[t];
      if (strength_sum[j] > 0.0)
        acc += g.volume(j) * (primary[eids[t]] / strength_sum[j]);
    }
    fv[i] = acc;
  }
  return fv;
}

double future_volume(const WeightedGraph& g, const CouplingTable& table,
                     NodeId i, CouplingMode mode) {
  EdgeStrengths s = edge_strengths(g, mode, &table);
  return future_volumes(g, s.primary)[i];
}

std::vector<NodeId> select_coarse_nodes(const WeightedGraph& g,
                                        const EdgeStrengths& s,
                                        const CoarsenParams& params) {
  const NodeId n = g.n();
  const std::vector<double> fv = future_volumes(g, s.primary);
  double mean = 0.0;
  for (double v : fv) mean += v;
  mean /= static_cast<double>(n);

  std::vector<uint8_t> in_c(n, 0);
  for (NodeId i = 0; i < n; ++i)
    if (fv[i] > params.volume_factor * mean) in_c[i] = 1;

  std::vector<NodeId> scan;
  scan.reserve(n);
  for (NodeId i = 0; i < n; ++i)
    if (!in_c[i]) scan.push_back(i);
  std::sort(scan.begin(), scan.end(), [&](NodeId a, NodeId b) {
    if (fv[a] != fv[b]) return fv[a] > fv[b];
    return a < b;
  });

  // total couplings per node are fixed; couplings to C grow as the scan
  // promotes nodes
  std::vector<double> primary_total(n, 0.0), pick_total(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    auto eids = g.neighbor_edges(i);
    for (EdgeId e : eids) {
      primary_total[i] += s.primary[e];
      pick_total[i] += s.pick[e];
    }
  }

  // A node moves to C when its relative coupling to C is strictly below Q.
  // At exactly Q it is considered sufficiently covered and stays fine (this
  // keeps a node whose single strong edge carries exactly half its total
  // coupling aggregatable instead of seeding it).
  const double q = params.strength_threshold;
  for (NodeId i : scan) {
    auto nbrs = g.neighbors(i);
    auto eids = g.neighbor_edges(i);
    double primary_c = 0.0, pick_c = 0.0;
    for (size_t t = 0; t < nbrs.size(); ++t) {
      if (in_c[nbrs[t]]) {
        primary_c += s.primary[eids[t]];
        pick_c += s.pick[eids[t]];
      }
    }
    const double r1 = primary_total[i] > 0.0 ? primary_c / primary_total[i] : 0.0;
    bool promote = r1 < q;
    if (!promote && s.dual_ratio_test) {
      const double r2 = pick_total[i] > 0.0 ? pick_c / pick_total[i] : 0.0;
      promote = r2 < q;
    }
    if (promote) in_c[i] = 1;
  }

  std::vector<NodeId> seeds;
  for (NodeId i = 0; i < n; ++i)
    if (in_c[i]) seeds.push_back(i);
  return seeds;
}

std::vector<NodeId> select_coarse_nodes(const WeightedGraph& g,
                                        const CouplingTable& table,
                                        const CoarsenParams& params) {
  EdgeStrengths s = edge_strengths(g, params.mode, &table);
  return select_coarse_nodes(g, s, params);
}

uint32_t rescue_uncovered(const WeightedGraph& g, std::vector<NodeId>& seeds) {
  std::vector<uint8_t> in_c(g.n(), 0);
  for (NodeId s : seeds) in_c[s] = 1;
  uint32_t rescued = 0;
  for (NodeId i = 0; i < g.n(); ++i) {
    if (in_c[i]) continue;
    bool covered = false;
    for (NodeId j : g.neighbors(i))
      if (in_c[j]) {
        covered = true;
        break;
      }
    if (!covered) {
      in_c[i] = 1;  // promoting i cannot uncover anyone else
      ++rescued;
    }
  }
  if (rescued > 0) {
    seeds.clear();
    for (NodeId i = 0; i < g.n(); ++i)
      if (in_c[i]) seeds.push_back(i);
  }
  return rescued;
}

namespace {

struct Candidate {
  NodeId node;
  double primary;
  double pick;
};

// beta filter + caliber pick, shared by coarse_neighborhood and
// build_interpolation
void filter_and_pick(std::vector<Candidate>& cand, uint32_t caliber, double beta) {
  double strongest = 0.0;
  for (const Candidate& c : cand) strongest = std::max(strongest, c.primary);
  std::erase_if(cand,
                [&](const Candidate& c) { return c.primary < beta * strongest; });
  if (cand.size() > caliber) {
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      if (a.pick != b.pick) return a.pick > b.pick;
      if (a.primary != b.primary) return a.primary > b.primary;
      return a.node < b.node;
    });
    cand.resize(caliber);
  }
  std::sort(cand.begin(), cand.end(),
            [](const Candidate& a, const Candidate& b) { return a.node < b.node; });
}

std::vector<Candidate> seed_neighbors(const WeightedGraph& g,
                                      const EdgeStrengths& s,
                                      const std::vector<uint8_t>& in_c, NodeId i) {
  std::vector<Candidate> cand;
  auto nbrs = g.neighbors(i);
  auto eids = g.neighbor_edges(i);
  for (size_t t = 0; t < nbrs.size(); ++t)
    if (in_c[nbrs[t]])
      cand.push_back({nbrs[t], s.primary[eids[t]], s.pick[eids[t]]});
  return cand;
}

}  // namespace

std::vector<NodeId> coarse_neighborhood(const WeightedGraph& g,
                                        const CouplingTable& table, NodeId i,
                                        std::span<const NodeId> seeds,
                                        uint32_t caliber, double beta,
                                        CouplingMode mode) {
  EdgeStrengths s = edge_strengths(g, mode, &table);
  std::vector<uint8_t> in_c(g.n(), 0);
  for (NodeId c : seeds) in_c[c] = 1;
  if (in_c[i]) throw std::invalid_argument("node is a seed");
  std::vector<Candidate> cand = seed_neighbors(g, s, in_c, i);
  if (cand.empty())
    throw std::invalid_argument("node has no seed neighbor (rescue required)");
  filter_and_pick(cand, caliber, beta);
  std::vector<NodeId> out;
  out.reserve(cand.size());
  for (const Candidate& c : cand) out.push_back(c.node);
  return out;
}

InterpolationMap build_interpolation(const WeightedGraph& g,
                                     const EdgeStrengths& s,
                                     std::span<const NodeId> seeds,
                                     const CoarsenParams& params) {
  InterpolationMap P;
  P.fine_n = g.n();
  P.coarse_n = static_cast<uint32_t>(seeds.size());
  P.seed_nodes.assign(seeds.begin(), seeds.end());
  std::sort(P.seed_nodes.begin(), P.seed_nodes.end());

  std::vector<uint32_t> ordinal(g.n(), UINT32_MAX);
  std::vector<uint8_t> in_c(g.n(), 0);
  for (uint32_t o = 0; o < P.seed_nodes.size(); ++o) {
    ordinal[P.seed_nodes[o]] = o;
    in_c[P.seed_nodes[o]] = 1;
  }

  P.offsets.assign(g.n() + 1, 0);
  std::vector<std::vector<Candidate>> rows(g.n());
  for (NodeId i = 0; i < g.n(); ++i) {
    if (in_c[i]) {
      P.offsets[i + 1] = 1;
      continue;
    }
    std::vector<Candidate> cand = seed_neighbors(g, s, in_c, i);
    if (cand.empty())
      throw std::logic_error("uncovered fine node; rescue_uncovered must run first");
    filter_and_pick(cand, params.caliber, params.coupling_filter);
    P.offsets[i + 1] = static_cast<uint32_t>(cand.size());
    rows[i] = std::move(cand);
  }
  for (NodeId i = 0; i < g.n(); ++i) P.offsets[i + 1] += P.offsets[i];
  P.cols.resize(P.offsets[g.n()]);
  P.vals.resize(P.offsets[g.n()]);
  for (NodeId i = 0; i < g.n(); ++i) {
    uint32_t at = P.offsets[i];
    if (in_c[i]) {
      P.cols[at] = ordinal[i];
      P.vals[at] = 1.0;
      continue;
    }
    double total = 0.0;
    for (const Candidate& c : rows[i]) total += c.pick;
    for (const Candidate& c : rows[i]) {
      P.cols[at] = ordinal[c.node];
      P.vals[at] = c.pick / total;
      ++at;
    }
  }
  return P;
}

InterpolationMap build_interpolation(const WeightedGraph& g,
                                     const CouplingTable& table,
                                     std::span<const NodeId> seeds,
                                     const CoarsenParams& params) {
  EdgeStrengths s = edge_strengths(g, params.mode, &table);
  return build_interpolation(g, s, seeds, params);
}

double InterpolationMap::row_sum(NodeId i) const {
  double acc = 0.0;
  for (double v : row_vals(i)) acc += v;
  return acc;
}

uint32_t InterpolationMap::single_aggregate(NodeId i) const {
  auto cols_i = row_cols(i);
  if (cols_i.size() != 1)
    throw std::logic_error("row has more than one aggregate (caliber > 1?)");
  return cols_i[0];
}

void InterpolationMap::write_csv(std::ostream& out) const {
  out << "fine,coarse,weight\n";
  char buf[64];
  for (NodeId i = 0; i < fine_n; ++i) {
    auto cs = row_cols(i);
    auto vs = row_vals(i);
    for (size_t t = 0; t < cs.size(); ++t) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), vs[t]);
      (void)ec;
      out << i << ',' << cs[t] << ',' << std::string_view(buf, p - buf) << '\n';
    }
  }
}

WeightedGraph build_coarse_graph(const WeightedGraph& g,
                                 const InterpolationMap& P) {
  if (P.fine_n != g.n()) throw std::invalid_argument("interpolation size mismatch");
  constexpr double kDropBelow = 1e-12;

  std::map<std::pair<uint32_t, uint32_t>, double> acc;
  for (const Edge& e : g.edges()) {
    auto cu = P.row_cols(e.u);
    auto vu = P.row_vals(e.u);
    auto cv = P.row_cols(e.v);
    auto vv = P.row_vals(e.v);
    for (size_t a = 0; a < cu.size(); ++a) {
      for (size_t b = 0; b < cv.size(); ++b) {
        const uint32_t p = cu[a], q = cv[b];
        if (p == q) continue;  // Galerkin self-loops are discarded
        auto key = std::minmax(p, q);
        acc[{key.first, key.second}] += vu[a] * e.w * vv[b];
      }
    }
  }

  WeightedGraph::Builder b(P.coarse_n);
  for (const auto& [key, w] : acc)
    if (w >= kDropBelow) b.add_edge(key.first, key.second, w);

  std::vector<double> coarse_vol(P.coarse_n, 0.0);
  for (NodeId i = 0; i < g.n(); ++i) {
    auto cs = P.row_cols(i);
    auto vs = P.row_vals(i);
    for (size_t t = 0; t < cs.size(); ++t)
      coarse_vol[cs[t]] += g.volume(i) * vs[t];
  }
  for (uint32_t p = 0; p < P.coarse_n; ++p) b.set_volume(p, coarse_vol[p]);
  return b.build();
}

Hierarchy build_hierarchy(const WeightedGraph& g, const CoarsenParams& params) {
  params.validate();
  if (g.n() == 0) throw std::invalid_argument("graph is empty");

  Hierarchy h;
  h.graphs.push_back(g);
  h.stop = StopReason::coarse_enough;
  const uint64_t master_seed = params.relax.seed;

  for (uint32_t level = 0;; ++level) {
    const WeightedGraph& cur = h.graphs.back();
    if (cur.n() <= params.coarsest_size) {
      h.stop = StopReason::coarse_enough;
      break;
    }
    if (level >= params.max_levels) {
      h.stop = StopReason::level_cap;
      break;
    }

    EdgeStrengths s;
    if (params.mode == CouplingMode::classical) {
      s = edge_strengths(cur, CouplingMode::classical, nullptr);
    } else {
      RelaxParams rp = params.relax;
      rp.seed = mix_seed(master_seed, level);
      const TestVectorSet tv = relax_test_vectors(cur, rp);
      const CouplingTable table =
          build_coupling_table(cur, tv, params.distance_kind);
      s = edge_strengths(cur, params.mode, &table);
    }

    std::vector<NodeId> seeds = select_coarse_nodes(cur, s, params);
    LevelStats stats;
    stats.rescued = rescue_uncovered(cur, seeds);
    stats.seeds = static_cast<uint32_t>(seeds.size());

    if (static_cast<double>(seeds.size()) >
        params.stall_ratio * static_cast<double>(cur.n())) {
      h.stop = StopReason::stalled;
      break;
    }

    InterpolationMap P = build_interpolation(cur, s, seeds, params);
    WeightedGraph coarse = build_coarse_graph(cur, P);
    h.seed_sets.push_back(std::move(seeds));
    h.stats.push_back(stats);
    h.maps.push_back(std::move(P));
    h.graphs.push_back(std::move(coarse));
  }
  return h;
}

}  // namespace algc
