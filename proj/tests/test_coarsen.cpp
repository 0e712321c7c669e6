#include <cmath>
#include <map>
#include <sstream>

#include <doctest.h>

#include "algc/coarsen.hpp"
#include "algc/rng.hpp"
#include "test_util.hpp"

using namespace algc;
using testutil::make_graph;
using testutil::random_connected_graph;

namespace {

// coupling table with prescribed per-edge couplings (for algorithm traces)
CouplingTable synth_table(const WeightedGraph& g, const std::vector<double>& c) {
  CouplingTable t;
  t.kind = DistanceKind::max_norm;
  t.coupling = c;
  t.distance.resize(g.m());
  t.classical.resize(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    t.distance[e] = 1.0 / c[e];
    t.classical[e] = 0.0;
  }
  return t;
}

CouplingTable real_table(const WeightedGraph& g, uint64_t seed) {
  RelaxParams p;
  p.K = 10;
  p.sweeps = 10;
  p.seed = seed;
  return build_coupling_table(g, relax_test_vectors(g, p), DistanceKind::max_norm);
}

// brute-force multigraph contraction: group nodes by aggregate, sum
// inter-group weights
WeightedGraph contraction_oracle(const WeightedGraph& g,
                                 const InterpolationMap& P) {
  WeightedGraph::Builder b(P.coarse_n);
  std::map<std::pair<uint32_t, uint32_t>, double> acc;
  for (const Edge& e : g.edges()) {
    const uint32_t p = P.single_aggregate(e.u), q = P.single_aggregate(e.v);
    if (p == q) continue;
    acc[std::minmax(p, q)] += e.w;
  }
  for (const auto& [key, w] : acc) b.add_edge(key.first, key.second, w);
  std::vector<double> vol(P.coarse_n, 0.0);
  for (NodeId i = 0; i < g.n(); ++i) vol[P.single_aggregate(i)] += g.volume(i);
  for (uint32_t p = 0; p < P.coarse_n; ++p) b.set_volume(p, vol[p]);
  return b.build();
}

bool graphs_equal(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  for (EdgeId e = 0; e < a.m(); ++e) {
    if (a.edges()[e].u != b.edges()[e].u) return false;
    if (a.edges()[e].v != b.edges()[e].v) return false;
    if (a.edges()[e].w != b.edges()[e].w) return false;
  }
  for (NodeId i = 0; i < a.n(); ++i)
    if (a.volume(i) != b.volume(i)) return false;
  return true;
}

}  // namespace

TEST_SUITE("coarsen") {

TEST_CASE("future volume") {
  CoarsenParams params;
  SUBCASE("isolated node keeps its own volume") {
    WeightedGraph::Builder b(2);
    b.add_edge(0, 1, 1.0);
    WeightedGraph g = b.build();
    // extend with an isolated third node
    WeightedGraph::Builder b3(3);
    b3.add_edge(0, 1, 1.0);
    b3.set_volume(2, 2.5);
    g = b3.build();
    const CouplingTable t = synth_table(g, {1.0});
    CHECK(future_volume(g, t, 2) == 2.5);
  }
  SUBCASE("two-node unit graph") {
    const WeightedGraph g = make_graph(2, {{0, 1, 1.0}});
    const CouplingTable t = synth_table(g, {1.0});
    CHECK(future_volume(g, t, 0) == doctest::Approx(2.0));
    CHECK(future_volume(g, t, 1) == doctest::Approx(2.0));
  }
  SUBCASE("three-node path center collects both leaves") {
    const WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const CouplingTable t = synth_table(g, {1.0, 1.0});
    CHECK(future_volume(g, t, 1) == doctest::Approx(3.0));
    // each leaf gets half of the center's coupling mass
    CHECK(future_volume(g, t, 0) == doctest::Approx(1.5));
  }
}

TEST_CASE("seed selection traces") {
  CoarsenParams params;
  SUBCASE("single node") {
    WeightedGraph::Builder b(1);
    const WeightedGraph g = b.build();
    const CouplingTable t = synth_table(g, {});
    CHECK(select_coarse_nodes(g, t, params) == std::vector<NodeId>{0});
  }
  SUBCASE("two-node unit graph seeds exactly one node") {
    const WeightedGraph g = make_graph(2, {{0, 1, 1.0}});
    const CouplingTable t = synth_table(g, {1.0});
    // equal future volumes; id tie-break scans node 0 first, which seeds;
    // node 1 is then fully coupled to C and stays fine
    CHECK(select_coarse_nodes(g, t, params) == std::vector<NodeId>{0});
  }
  SUBCASE("every non-seed is strongly coupled to the seeds") {
    const WeightedGraph g = generate_mesh2d(9, 9).with_edge(20, 25, 1.0);
    const CouplingTable t = real_table(g, 17);
    const std::vector<NodeId> seeds = select_coarse_nodes(g, t, params);
    CHECK(!seeds.empty());
    CHECK(seeds.size() < g.n());
    std::vector<uint8_t> in_c(g.n(), 0);
    for (NodeId s : seeds) in_c[s] = 1;
    for (NodeId i = 0; i < g.n(); ++i) {
      if (in_c[i]) continue;
      double c_to_seeds = 0.0, c_total = 0.0, w_to_seeds = 0.0, w_total = 0.0;
      auto nbrs = g.neighbors(i);
      auto eids = g.neighbor_edges(i);
      auto ws = g.neighbor_weights(i);
      for (size_t k = 0; k < nbrs.size(); ++k) {
        c_total += t.coupling[eids[k]];
        w_total += ws[k];
        if (in_c[nbrs[k]]) {
          c_to_seeds += t.coupling[eids[k]];
          w_to_seeds += ws[k];
        }
      }
      CHECK(c_to_seeds / c_total >= params.strength_threshold - 1e-12);
      CHECK(w_to_seeds / w_total >= params.strength_threshold - 1e-12);
    }
  }
}

TEST_CASE("coarse neighborhood traces") {
  // star: node 0 in F, seeds 1 (a) and 2 (b)
  SUBCASE("beta filter passes both, pick by larger weight") {
    const WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}});
    const CouplingTable t = synth_table(g, {9.0, 10.0});
    const std::vector<NodeId> seeds{1, 2};
    CHECK(coarse_neighborhood(g, t, 0, seeds, 1, 0.5) == std::vector<NodeId>{2});
  }
  SUBCASE("beta filter drops the heavier edge with weak coupling") {
    const WeightedGraph g = make_graph(3, {{0, 1, 5.0}, {0, 2, 1.0}});
    const CouplingTable t = synth_table(g, {1.0, 10.0});
    const std::vector<NodeId> seeds{1, 2};
    CHECK(coarse_neighborhood(g, t, 0, seeds, 1, 0.5) == std::vector<NodeId>{2});
  }
  SUBCASE("single seed neighbor for any caliber") {
    const WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}});
    const CouplingTable t = synth_table(g, {1.0, 1.0});
    const std::vector<NodeId> seeds{1};
    CHECK(coarse_neighborhood(g, t, 0, seeds, 1, 0.5) == std::vector<NodeId>{1});
    CHECK(coarse_neighborhood(g, t, 0, seeds, 2, 0.5) == std::vector<NodeId>{1});
  }
  SUBCASE("uncovered node demands a rescue") {
    const WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const CouplingTable t = synth_table(g, {1.0, 1.0});
    const std::vector<NodeId> seeds{2};
    CHECK_THROWS_AS(coarse_neighborhood(g, t, 0, seeds, 1, 0.5),
                    std::invalid_argument);
    std::vector<NodeId> fixed{2};
    CHECK(rescue_uncovered(g, fixed) == 1);
    CHECK(fixed == std::vector<NodeId>{0, 2});
  }
}

TEST_CASE("interpolation rows") {
  CoarsenParams params;
  params.caliber = 2;
  // path a(1) - i - b(2), weights 1 and 3
  const WeightedGraph g = make_graph(3, {{0, 1, 1.0}, {1, 2, 3.0}});
  const CouplingTable t = synth_table(g, {1.0, 1.0});
  const std::vector<NodeId> seeds{0, 2};
  const InterpolationMap P = build_interpolation(g, t, seeds, params);
  CHECK(P.coarse_n == 2);
  // seed rows carry a single unit entry
  CHECK(P.row_cols(0).size() == 1);
  CHECK(P.row_vals(0)[0] == 1.0);
  CHECK(P.row_cols(2)[0] == 1);
  // the fine node splits 1/4 : 3/4
  REQUIRE(P.row_cols(1).size() == 2);
  CHECK(P.row_vals(1)[0] == doctest::Approx(0.25));
  CHECK(P.row_vals(1)[1] == doctest::Approx(0.75));
  for (NodeId i = 0; i < g.n(); ++i)
    CHECK(std::fabs(P.row_sum(i) - 1.0) <= 1e-12);

  std::ostringstream csv;
  P.write_csv(csv);
  CHECK(csv.str().substr(0, 18) == "fine,coarse,weight");
}

TEST_CASE("caliber-1 interpolation is a partition matrix") {
  CoarsenParams params;
  for (uint64_t seed = 0; seed < 15; ++seed) {
    SplitMix64 rng(seed);
    const NodeId n = 5 + static_cast<NodeId>(rng.next_below(25));
    const WeightedGraph g =
        random_connected_graph(n, n / 2, seed * 31 + 1, true);
    const CouplingTable t = real_table(g, seed);
    std::vector<NodeId> seeds = select_coarse_nodes(g, t, params);
    rescue_uncovered(g, seeds);
    const InterpolationMap P = build_interpolation(g, t, seeds, params);
    for (NodeId i = 0; i < g.n(); ++i) {
      REQUIRE(P.row_cols(i).size() == 1);
      CHECK(P.row_vals(i)[0] == 1.0);
    }
    // Galerkin equals plain contraction for partition matrices
    const WeightedGraph coarse = build_coarse_graph(g, P);
    CHECK(graphs_equal(coarse, contraction_oracle(g, P)));
  }
}

TEST_CASE("coarse graph construction") {
  SUBCASE("4-cycle contracted to adjacent pairs") {
    const WeightedGraph g =
        make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
    InterpolationMap P;
    P.fine_n = 4;
    P.coarse_n = 2;
    P.offsets = {0, 1, 2, 3, 4};
    P.cols = {0, 0, 1, 1};
    P.vals = {1.0, 1.0, 1.0, 1.0};
    P.seed_nodes = {0, 2};
    const WeightedGraph coarse = build_coarse_graph(g, P);
    CHECK(coarse.n() == 2);
    CHECK(coarse.m() == 1);
    CHECK(coarse.edge_weight(0, 1) == 2.0);  // two parallel fine edges merged
    CHECK(coarse.volume(0) == 2.0);
    CHECK(coarse.volume(1) == 2.0);
  }
  SUBCASE("identity interpolation reproduces the graph") {
    const WeightedGraph g = random_connected_graph(12, 10, 5, true);
    InterpolationMap P;
    P.fine_n = P.coarse_n = g.n();
    P.offsets.resize(g.n() + 1);
    for (NodeId i = 0; i <= g.n(); ++i) P.offsets[i] = i;
    P.cols.resize(g.n());
    P.vals.assign(g.n(), 1.0);
    P.seed_nodes.resize(g.n());
    for (NodeId i = 0; i < g.n(); ++i) {
      P.cols[i] = i;
      P.seed_nodes[i] = i;
    }
    CHECK(graphs_equal(build_coarse_graph(g, P), g));
  }
  SUBCASE("total volume is conserved by arbitrary row-stochastic maps") {
    const WeightedGraph g = random_connected_graph(14, 12, 6, true);
    CoarsenParams params;
    params.caliber = 2;
    const CouplingTable t = real_table(g, 9);
    std::vector<NodeId> seeds = select_coarse_nodes(g, t, params);
    rescue_uncovered(g, seeds);
    const InterpolationMap P = build_interpolation(g, t, seeds, params);
    const WeightedGraph coarse = build_coarse_graph(g, P);
    CHECK(coarse.total_volume() ==
          doctest::Approx(g.total_volume()).epsilon(1e-12));
  }
}

TEST_CASE("hierarchy") {
  SUBCASE("small graphs stay single-level") {
    const WeightedGraph g = generate_mesh2d(2, 3);
    CoarsenParams params;
    params.coarsest_size = 8;
    const Hierarchy h = build_hierarchy(g, params);
    CHECK(h.levels() == 1);
    CHECK(h.maps.empty());
    CHECK(h.stop == StopReason::coarse_enough);
  }
  SUBCASE("mesh hierarchy shrinks strictly and conserves volume") {
    const WeightedGraph g = generate_mesh2d(33, 33);
    CoarsenParams params;
    params.relax.seed = 11;
    const Hierarchy h = build_hierarchy(g, params);
    CHECK(h.levels() >= 3);
    for (size_t l = 1; l < h.levels(); ++l) {
      CHECK(h.graphs[l].n() < h.graphs[l - 1].n());
      CHECK(h.graphs[l].total_volume() ==
            doctest::Approx(g.total_volume()).epsilon(1e-9));
    }
    CHECK(h.coarsest().n() <= params.coarsest_size);
    // interpolation rows stay stochastic on every level
    for (const InterpolationMap& P : h.maps)
      for (NodeId i = 0; i < P.fine_n; ++i)
        CHECK(std::fabs(P.row_sum(i) - 1.0) <= 1e-12);
  }
  SUBCASE("caliber-2 rows carry one or two positive entries") {
    const WeightedGraph g = generate_mesh2d(15, 15).with_edge(16, 60, 2.0);
    CoarsenParams params;
    params.caliber = 2;
    params.relax.seed = 23;
    const Hierarchy h = build_hierarchy(g, params);
    CHECK(h.levels() >= 2);
    for (const InterpolationMap& P : h.maps) {
      for (NodeId i = 0; i < P.fine_n; ++i) {
        const size_t entries = P.row_cols(i).size();
        CHECK(entries >= 1);
        CHECK(entries <= 2);
        for (double v : P.row_vals(i)) CHECK(v > 0.0);
        CHECK(std::fabs(P.row_sum(i) - 1.0) <= 1e-12);
      }
    }
  }
  SUBCASE("classical mode ignores the seed entirely") {
    const WeightedGraph g = generate_mesh2d(10, 10);
    CoarsenParams params;
    params.mode = CouplingMode::classical;
    params.relax.seed = 1;
    const Hierarchy a = build_hierarchy(g, params);
    params.relax.seed = 999;
    const Hierarchy b = build_hierarchy(g, params);
    REQUIRE(a.levels() == b.levels());
    for (size_t l = 0; l < a.levels(); ++l)
      CHECK(a.graphs[l].fingerprint() == b.graphs[l].fingerprint());
    for (size_t l = 0; l < a.maps.size(); ++l) {
      CHECK(a.maps[l].cols == b.maps[l].cols);
      CHECK(a.maps[l].vals == b.maps[l].vals);
    }
  }
  SUBCASE("relaxation mode is deterministic per seed") {
    const WeightedGraph g = generate_mesh2d(8, 8);
    CoarsenParams params;
    params.relax.seed = 5;
    const Hierarchy a = build_hierarchy(g, params);
    const Hierarchy b = build_hierarchy(g, params);
    REQUIRE(a.levels() == b.levels());
    for (size_t l = 0; l < a.levels(); ++l)
      CHECK(a.graphs[l].fingerprint() == b.graphs[l].fingerprint());
  }
}

TEST_CASE("parameter validation") {
  CoarsenParams p;
  p.caliber = 3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.caliber = 1;
  p.strength_threshold = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.strength_threshold = 0.5;
  p.volume_factor = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}  // TEST_SUITE
