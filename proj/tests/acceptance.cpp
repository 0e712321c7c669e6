// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line (details on the following indented lines). Run with no
// arguments for all criteria or with a list of criterion numbers.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "algc/bench.hpp"
#include "algc/coarsen.hpp"
#include "algc/distance.hpp"
#include "algc/graph_io.hpp"
#include "algc/ordering.hpp"
#include "algc/partition.hpp"
#include "algc/rng.hpp"

using namespace algc;

namespace {

std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

WeightedGraph random_connected(NodeId n, uint32_t extra, uint64_t seed,
                               bool random_weights) {
  SplitMix64 rng(seed);
  WeightedGraph::Builder b(n);
  auto weight = [&]() { return random_weights ? 0.25 + rng.next_unit() * 4.0 : 1.0; };
  for (NodeId v = 1; v < n; ++v)
    b.add_edge(v, static_cast<NodeId>(rng.next_below(v)), weight());
  for (uint32_t e = 0; e < extra; ++e) {
    NodeId u = static_cast<NodeId>(rng.next_below(n));
    NodeId v = static_cast<NodeId>(rng.next_below(n));
    if (u != v) b.add_edge(u, v, weight());
  }
  return b.build();
}

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
  TableConfig cfg;  // 33x33, runs 100, seed 42, K {1,5,10}, r {10,20,50,100}
  cfg.threads = 2;
  const std::vector<TableRow> rows = bench_table1(cfg);

  std::map<std::pair<uint32_t, uint32_t>, std::vector<TableRow>> by_cell;
  for (const TableRow& r : rows) by_cell[{r.K, r.r}].push_back(r);

  bool ok = true;
  for (const TableRow& r : rows) {
    if (r.K == 10 && r.r == 20 && r.wij == 1.0) {
      note(fmt("K=10 r=20 w=1: mean %.4f (want [0.7, 1.5])", r.mean));
      ok &= r.mean >= 0.7 && r.mean <= 1.5;
    }
    if (r.K == 10 && r.r == 20 && r.wij == 4.0) {
      note(fmt("K=10 r=20 w=4: mean %.4f (want [-0.4, 0.4])", r.mean));
      ok &= r.mean >= -0.4 && r.mean <= 0.4;
    }
  }
  // Means must fall with w_ij in every K >= 5 row. The K = 1 statistic has a
  // standard deviation as large as its mean, so a 100-run K=1 row inverts
  // somewhere more often than not; those rows are reported but not gated.
  uint32_t monotone_cells = 0, total_cells = 0;
  for (const auto& [cell, cell_rows] : by_cell) {
    bool mono = true;
    for (size_t t = 1; t < cell_rows.size(); ++t)
      mono &= cell_rows[t].mean <= cell_rows[t - 1].mean;
    if (cell.first >= 5) {
      ++total_cells;
      monotone_cells += mono;
    }
    if (!mono)
      note(fmt("non-monotone means at K=%u r=%u%s", cell.first, cell.second,
               cell.first >= 5 ? "" : " (K=1: informational only)"));
  }
  note(fmt("means non-increasing in w: %u of %u rows with K >= 5",
           monotone_cells, total_cells));
  ok &= monotone_cells == total_cells;

  uint32_t tighter = 0;
  for (const TableRow& r : rows) {
    if (r.K != 10) continue;
    for (const TableRow& s : rows)
      if (s.K == 1 && s.r == r.r && s.wij == r.wij && r.stddev < s.stddev)
        ++tighter;
  }
  note(fmt("K=10 stds below K=1 stds in %u of 16 (r, w) cells (want >= 15)",
           tighter));
  ok &= tighter >= 15;
  return ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
  TableConfig cfg;
  cfg.threads = 2;
  const std::vector<TableRow> rows = bench_table2(cfg);
  bool ok = true;
  uint32_t positive = 0, total = 0;
  for (const TableRow& r : rows) {
    if (r.K != 5 && r.K != 10) continue;
    ++total;
    if (r.mean > 0.0) ++positive;
    else note(fmt("non-positive mean %.4f at K=%u r=%u w=%g", r.mean, r.K, r.r, r.wij));
  }
  note(fmt("positive means in %u of %u cells for K in {5, 10}", positive, total));
  ok &= positive == total && total == 32;
  for (const TableRow& r : rows) {
    if (r.K == 10 && r.r == 20 && r.wij == 4.0) {
      note(fmt("K=10 r=20 w=4: positive-ratio fraction %.2f (want >= 0.85)",
               r.pos_fraction));
      ok &= r.pos_fraction >= 0.85;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  bool ok = true;
  {
    Figure1Config cfg;  // relaxation, w_ij = 1, caliber 1
    cfg.threads = 2;
    const Figure1Stats st = bench_figure1(cfg);
    note(fmt("relaxation w=1: with_mesh_neighbor %u, with_j %u, alone %u of %u "
             "(want mesh neighbor >= 95)",
             st.with_mesh_neighbor, st.with_j, st.alone, st.runs));
    ok &= st.with_mesh_neighbor >= 95;
  }
  {
    Figure1Config cfg;
    cfg.mode = CouplingMode::classical;
    cfg.wij = 4.0;
    cfg.threads = 2;
    const Figure1Stats st = bench_figure1(cfg);
    note(fmt("classical w=4: with_j %u of %u (want >= 50)", st.with_j, st.runs));
    ok &= st.with_j >= 50;
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  CompareConfig cfg;  // m2sp, caliber 1, runs 100, seed 42, K=10 r=20
  cfg.threads = 2;
  const std::vector<NamedGraph> corpus = irregular_corpus(cfg.seed);
  const std::vector<ComparisonRow> rows = bench_compare(corpus, cfg);

  uint32_t wins = 0;
  double log_sum = 0.0;
  for (const ComparisonRow& r : rows) {
    note(fmt("%-16s ratio_before %.4f ratio_after %.4f", r.graph.c_str(),
             r.ratio_before, r.ratio_after));
    if (r.ratio_before > 1.0) ++wins;
    log_sum += std::log(r.ratio_before);
  }
  const double geo_mean = std::exp(log_sum / double(rows.size()));
  note(fmt("ratio_before > 1 on %u of %zu graphs (want >= 60%%), "
           "geometric mean %.4f (want > 1)",
           wins, rows.size(), geo_mean));
  return rows.size() >= 6 && wins * 10 >= rows.size() * 6 && geo_mean > 1.0;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5() {
  bool ok = true;
  // caliber-1 Galerkin vs brute-force contraction, exact
  uint32_t contraction_ok = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    SplitMix64 rng(seed);
    const NodeId n = 5 + static_cast<NodeId>(rng.next_below(26));
    const WeightedGraph g = random_connected(n, n, seed * 13 + 1, true);
    CoarsenParams params;
    params.relax.seed = seed;
    RelaxParams rp;
    rp.K = 8;
    rp.sweeps = 8;
    rp.seed = seed;
    const CouplingTable t =
        build_coupling_table(g, relax_test_vectors(g, rp), DistanceKind::max_norm);
    std::vector<NodeId> seeds = select_coarse_nodes(g, t, params);
    rescue_uncovered(g, seeds);
    const InterpolationMap P = build_interpolation(g, t, seeds, params);
    const WeightedGraph coarse = build_coarse_graph(g, P);

    std::map<std::pair<uint32_t, uint32_t>, double> oracle;
    std::vector<double> vol(P.coarse_n, 0.0);
    for (const Edge& e : g.edges()) {
      const uint32_t p = P.single_aggregate(e.u), q = P.single_aggregate(e.v);
      if (p != q) oracle[std::minmax(p, q)] += e.w;
    }
    for (NodeId i = 0; i < g.n(); ++i) vol[P.single_aggregate(i)] += g.volume(i);
    bool same = coarse.m() == oracle.size() && coarse.n() == P.coarse_n;
    for (const Edge& e : coarse.edges())
      same &= oracle.count({e.u, e.v}) && oracle[{e.u, e.v}] == e.w;
    for (uint32_t p = 0; same && p < P.coarse_n; ++p)
      same &= coarse.volume(p) == vol[p];
    contraction_ok += same;
  }
  note(fmt("caliber-1 coarse graph == contraction oracle on %u of 50 graphs",
           contraction_ok));
  ok &= contraction_ok == 50;

  // unit-volume psum == integer permutation functional, exact
  uint32_t psum_ok = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed + 500);
    const NodeId n = 10 + static_cast<NodeId>(rng.next_below(41));
    WeightedGraph::Builder b(n);
    for (NodeId v = 1; v < n; ++v)
      b.add_edge(v, static_cast<NodeId>(rng.next_below(v)),
                 1.0 + double(rng.next_below(9)));
    const WeightedGraph g = b.build();
    std::vector<NodeId> seq(n);
    for (NodeId i = 0; i < n; ++i) seq[i] = i;
    for (NodeId i = n; i-- > 1;) std::swap(seq[i], seq[rng.next_below(i + 1)]);
    const Arrangement a = Arrangement::from_sequence(g, seq);
    bool same = true;
    for (int p : {1, 2}) {
      int64_t want = 0;
      for (const Edge& e : g.edges()) {
        const int64_t d = std::llabs(int64_t(a.rank[e.u]) - int64_t(a.rank[e.v]));
        want += int64_t(e.w) * (p == 1 ? d : d * d);
      }
      same &= psum_cost(g, a, p) == double(want);
    }
    psum_ok += same;
  }
  note(fmt("psum == integer permutation functional on %u of 20 instances", psum_ok));
  ok &= psum_ok == 20;

  // cut cost == independent edge scan, exact
  uint32_t cut_ok = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const WeightedGraph g = random_connected(30, 40, seed + 900, true);
    SplitMix64 rng(seed);
    Bipartition b;
    b.side.assign(g.n(), 1);
    for (NodeId i = 0; i < g.n(); ++i) b.side[i] = rng.next_unit() < 0.5 ? 1 : 2;
    b.side[0] = 1;
    b.side[1] = 2;
    double want = 0.0;
    for (NodeId i = 0; i < g.n(); ++i) {
      auto nbrs = g.neighbors(i);
      auto ws = g.neighbor_weights(i);
      for (size_t t = 0; t < nbrs.size(); ++t)
        if (i < nbrs[t] && b.side[i] != b.side[nbrs[t]]) want += ws[t];
    }
    cut_ok += cut_cost(g, b) == want;
  }
  note(fmt("cut == edge-scan oracle on %u of 20 instances", cut_ok));
  ok &= cut_ok == 20;

  // closed-form p=2 distance vs eta-grid scan, 1e-6 relative
  uint32_t dist_ok = 0;
  RelaxParams rp;
  rp.K = 10;
  TestVectorSet tv(200, 10, rp, 0);
  SplitMix64 rng(333);
  for (NodeId i = 0; i < 200; ++i)
    for (uint32_t k = 0; k < 10; ++k) tv.lane(i)[k] = rng.next_centered() * 3.0;
  for (uint32_t pair = 0; pair < 100; ++pair) {
    const NodeId i = pair, j = pair + 100;
    const double closed = general_algebraic_distance(tv, i, j, PNorm::p2);
    double best = INFINITY;
    for (double t = std::log(1e-3); t <= std::log(1e3); t += 1e-4) {
      const double eta = std::exp(t), inv = 1.0 / eta;
      double acc = 0.0;
      for (uint32_t k = 0; k < 10; ++k) {
        const double d = eta * tv.value(i, k) - inv * tv.value(j, k);
        acc += d * d;
      }
      best = std::min(best, acc);
    }
    best = std::sqrt(best);
    dist_ok += std::fabs(closed - best) <= 1e-6 * std::max(1.0, best);
  }
  note(fmt("p=2 closed form within 1e-6 of grid scan on %u of 100 pairs", dist_ok));
  ok &= dist_ok == 100;
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
  bool ok = true;
  // interpolation row sums and volume conservation across hierarchies
  double worst_row = 0.0, worst_vol = 0.0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedGraph g =
        seed < 5 ? generate_mesh_with_chords(20, 20, 30, seed)
                 : generate_preferential_attachment(400, 2, seed);
    CoarsenParams params;
    params.caliber = seed % 2 ? 2 : 1;
    params.relax.seed = seed;
    const Hierarchy h = build_hierarchy(g, params);
    for (const InterpolationMap& P : h.maps)
      for (NodeId i = 0; i < P.fine_n; ++i)
        worst_row = std::max(worst_row, std::fabs(P.row_sum(i) - 1.0));
    for (const WeightedGraph& lvl : h.graphs)
      worst_vol = std::max(
          worst_vol, std::fabs(lvl.total_volume() - g.total_volume()) /
                         g.total_volume());
  }
  note(fmt("max |row sum - 1| = %.2e (want <= 1e-12)", worst_row));
  note(fmt("max relative volume drift = %.2e (want <= 1e-9)", worst_vol));
  ok &= worst_row <= 1e-12 && worst_vol <= 1e-9;

  // refinement monotonicity over 100 seeded runs
  uint32_t violations = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const WeightedGraph g = random_connected(60, 80, seed + 42, false);
    SplitMix64 rng(seed);
    std::vector<NodeId> seq(g.n());
    for (NodeId i = 0; i < g.n(); ++i) seq[i] = i;
    for (NodeId i = g.n(); i-- > 1;) std::swap(seq[i], seq[rng.next_below(i + 1)]);
    Arrangement a = Arrangement::from_sequence(g, seq);
    const int p = seed % 2 ? 1 : 2;
    double prev = psum_cost(g, a, p);
    for (int s = 0; s < 5; ++s) {
      refine_sweep(g, a, p, 5);
      const double cur = psum_cost(g, a, p);
      if (cur > prev) ++violations;
      prev = cur;
    }
  }
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const WeightedGraph g = random_connected(60, 90, seed + 4242, true);
    SplitMix64 rng(seed);
    Bipartition b;
    b.side.assign(g.n(), 1);
    for (NodeId i = 1; i < g.n(); ++i) b.side[i] = rng.next_unit() < 0.5 ? 1 : 2;
    if (std::count(b.side.begin(), b.side.end(), 2) == 0) b.side[1] = 2;
    fm_refine(g, b, 0.1, true);  // includes repair
    const double before = cut_cost(g, b);
    const double after = fm_refine(g, b, 0.1, true);
    if (after > before) ++violations;
  }
  note(fmt("refinement monotonicity violations: %u of 100 runs (want 0)",
           violations));
  ok &= violations == 0;

  // determinism: byte-identical bench output across repeats and thread counts
  TableConfig tcfg;
  tcfg.runs = 10;
  tcfg.K_values = {5};
  tcfg.r_values = {10, 20};
  tcfg.wij_values = {1, 4};
  auto table_csv = [&](uint32_t threads) {
    TableConfig c = tcfg;
    c.threads = threads;
    std::ostringstream out;
    write_table1_csv(out, bench_table1(c));
    return out.str();
  };
  const bool table_deterministic = table_csv(1) == table_csv(1) &&
                                   table_csv(1) == table_csv(2) &&
                                   table_csv(1) == table_csv(4);
  note(std::string("table CSV byte-identical across runs and 1/2/4 threads: ") +
       (table_deterministic ? "yes" : "NO"));
  ok &= table_deterministic;

  const WeightedGraph g = generate_mesh_with_chords(15, 15, 20, 3);
  OrderingParams op;
  op.coarsen.relax.seed = 9;
  auto solution_text = [&]() {
    const OrderingResult r = solve_ordering(g, 2, op);
    std::ostringstream out;
    write_ordering(out, r.arrangement, r.cost_after_post);
    return out.str();
  };
  const bool solve_deterministic = solution_text() == solution_text();
  note(std::string("solver output byte-identical across runs: ") +
       (solve_deterministic ? "yes" : "NO"));
  ok &= solve_deterministic;
  return ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  // exhaustive oracles at n <= 8
  uint32_t bisect_hits = 0, order_hits = 0;
  const uint32_t instances = 200;
  for (uint32_t inst = 0; inst < instances; ++inst) {
    SplitMix64 rng(inst * 7 + 3);
    const NodeId n = 4 + static_cast<NodeId>(rng.next_below(5));  // 4..8
    const WeightedGraph g = random_connected(n, n / 2 + 1, inst + 17, true);

    {
      const double alpha = 0.2;
      BisectionParams bp;
      bp.coarsen.relax.seed = inst;
      const BisectionResult r = solve_bisection(g, alpha, bp);
      const double cap = (1.0 + alpha) * g.n() / 2.0 + 1e-9;
      double best = INFINITY;
      for (uint64_t mask = 1; mask + 1 < (1ull << g.n()); ++mask) {
        uint32_t ones = 0;
        for (NodeId t = 0; t < g.n(); ++t) ones += (mask >> t) & 1;
        if (ones > cap || g.n() - ones > cap) continue;
        double cut = 0.0;
        for (const Edge& e : g.edges())
          if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) cut += e.w;
        best = std::min(best, cut);
      }
      if (r.cut <= best + 1e-9) ++bisect_hits;
    }
    {
      OrderingParams op;
      op.coarsen.relax.seed = inst;
      const int p = inst % 2 ? 1 : 2;
      const OrderingResult r = solve_ordering(g, p, op);
      std::vector<NodeId> perm(g.n());
      for (NodeId i = 0; i < g.n(); ++i) perm[i] = i;
      std::vector<double> pos(g.n());
      double best = INFINITY;
      do {
        double prefix = 0.0;
        for (NodeId node : perm) {
          pos[node] = prefix + 0.5 * g.volume(node);
          prefix += g.volume(node);
        }
        double cost = 0.0;
        for (const Edge& e : g.edges()) {
          const double d = std::fabs(pos[e.u] - pos[e.v]);
          cost += e.w * (p == 1 ? d : d * d);
        }
        best = std::min(best, cost);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (r.cost_after_post <= best + 1e-9 * (1.0 + best)) ++order_hits;
    }
  }
  note(fmt("bisection optimal on %u of %u (want >= 95%%)", bisect_hits, instances));
  note(fmt("ordering optimal on %u of %u (want >= 90%%)", order_hits, instances));
  return bisect_hits * 100 >= instances * 95 && order_hits * 100 >= instances * 90;
}

struct Criterion {
  int id;
  const char* name;
  bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "Table-1 trend reproduction", criterion1},
    {2, "Table-2 trend reproduction", criterion2},
    {3, "Figure-1 aggregation safeguard", criterion3},
    {4, "classical vs relaxation comparison direction", criterion4},
    {5, "oracle equivalences", criterion5},
    {6, "invariant suite", criterion6},
    {7, "small-instance exactness", criterion7},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    g_notes.clear();
    bool ok = false;
    std::string error;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.name);
    for (const std::string& n : g_notes) std::printf("    %s\n", n.c_str());
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    if (!ok) ++failures;
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
