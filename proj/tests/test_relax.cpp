#include <cmath>
#include <vector>

#include <doctest.h>

#include "algc/distance.hpp"
#include "algc/kernels.hpp"
#include "algc/relax.hpp"
#include "algc/rng.hpp"
#include "test_util.hpp"

using namespace algc;
using testutil::make_graph;

namespace {

double lane_diff(const TestVectorSet& tv, uint32_t k) {
  return tv.value(0, k) - tv.value(1, k);
}

double max_edge_distance(const WeightedGraph& g, const TestVectorSet& tv) {
  double m = 0.0;
  for (const Edge& e : g.edges())
    m = std::max(m, edge_algebraic_distance(tv, e.u, e.v, DistanceKind::max_norm));
  return m;
}

}  // namespace

TEST_SUITE("relax") {

TEST_CASE("zero sweeps keep the seeded initial randoms") {
  const WeightedGraph g = generate_mesh2d(3, 3);
  RelaxParams p;
  p.K = 4;
  p.sweeps = 0;
  p.seed = 77;
  p.normalize = Normalize::none;
  const TestVectorSet tv = relax_test_vectors(g, p);
  for (NodeId i = 0; i < g.n(); ++i) {
    for (uint32_t k = 0; k < p.K; ++k) {
      CHECK(tv.value(i, k) >= -0.5);
      CHECK(tv.value(i, k) < 0.5);
    }
  }
  // the initial entries come from one independent stream per vector
  for (uint32_t k = 0; k < p.K; ++k) {
    SplitMix64 stream(mix_seed(p.seed, k));
    for (NodeId i = 0; i < g.n(); ++i)
      CHECK(tv.value(i, k) == stream.next_centered());
  }
}

TEST_CASE("two-node path contracts the difference by |1-2w| per sweep") {
  const WeightedGraph g = make_graph(2, {{0, 1, 1.0}});
  RelaxParams base;
  base.K = 3;
  base.seed = 5;
  base.normalize = Normalize::none;

  SUBCASE("omega = 0.3") {
    // closed form on the 2x2 system: both Jacobi values swap, so the
    // difference scales by (1-omega) - omega = 1 - 2*omega each sweep
    const double factor = 1.0 - 2.0 * 0.3;
    std::vector<double> prev(base.K);
    for (uint32_t r = 0; r <= 4; ++r) {
      RelaxParams p = base;
      p.omega = 0.3;
      p.sweeps = r;
      const TestVectorSet tv = relax_test_vectors(g, p);
      for (uint32_t k = 0; k < p.K; ++k) {
        const double d = lane_diff(tv, k);
        if (r > 0) {
          CHECK(d == doctest::Approx(prev[k] * factor).epsilon(1e-12));
          CHECK(std::fabs(d) < std::fabs(prev[k]));  // strictly decreasing
        }
        prev[k] = d;
      }
    }
  }
  SUBCASE("omega = 0.5 converges in one sweep") {
    RelaxParams p = base;
    p.omega = 0.5;
    p.sweeps = 1;
    const TestVectorSet tv = relax_test_vectors(g, p);
    for (uint32_t k = 0; k < p.K; ++k) CHECK(lane_diff(tv, k) == 0.0);
  }
}

TEST_CASE("a sweep preserves constant vectors (Laplacian nullspace)") {
  const WeightedGraph g = generate_mesh2d(3, 4);
  const uint32_t stride = 4;
  std::vector<double> x(size_t(g.n()) * stride);
  for (NodeId i = 0; i < g.n(); ++i)
    for (uint32_t k = 0; k < stride; ++k) x[size_t(i) * stride + k] = 1.5 + k;
  std::vector<double> inv(g.n());
  for (NodeId i = 0; i < g.n(); ++i) inv[i] = 1.0 / g.weighted_degree(i);
  std::vector<double> y(x.size());
  kernels::ops().jacobi_sweep(g.n(), g.csr_offsets().data(), g.csr_nodes().data(),
                              g.csr_weights().data(), inv.data(), 0.5, x.data(),
                              y.data(), stride);
  for (size_t t = 0; t < x.size(); ++t)
    CHECK(y[t] == doctest::Approx(x[t]).epsilon(1e-14));
}

TEST_CASE("determinism: bitwise identical across runs and backends") {
  const WeightedGraph g = testutil::random_connected_graph(30, 40, 3, true);
  RelaxParams p;
  p.K = 10;
  p.sweeps = 12;
  p.seed = 9;
  const TestVectorSet a = relax_test_vectors(g, p);
  const TestVectorSet b = relax_test_vectors(g, p);
  CHECK(a.raw() == b.raw());

  const kernels::Backend before = kernels::active_backend();
  std::vector<std::vector<double>> results;
  for (kernels::Backend bk :
       {kernels::Backend::scalar, kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_available(bk)) continue;
    kernels::set_backend(bk);
    results.push_back(relax_test_vectors(g, p).raw());
  }
  kernels::set_backend(before);
  for (size_t t = 1; t < results.size(); ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("degree-0 nodes are frozen at their initial value") {
  WeightedGraph::Builder b(3);
  b.add_edge(0, 1, 1.0);
  const WeightedGraph g = b.build();  // node 2 isolated
  RelaxParams p;
  p.K = 4;
  p.seed = 19;
  p.normalize = Normalize::none;
  p.sweeps = 0;
  const TestVectorSet initial = relax_test_vectors(g, p);
  p.sweeps = 7;
  const TestVectorSet relaxed = relax_test_vectors(g, p);
  for (uint32_t k = 0; k < p.K; ++k)
    CHECK(relaxed.value(2, k) == initial.value(2, k));
}

TEST_CASE("normalization: zero mean and unit norm per component") {
  // two components plus an isolated node
  WeightedGraph::Builder b(8);
  b.add_edge(0, 1, 1.0);
  b.add_edge(1, 2, 2.0);
  b.add_edge(3, 4, 1.0);
  b.add_edge(4, 5, 1.0);
  b.add_edge(5, 6, 0.5);
  const WeightedGraph g = b.build();

  RelaxParams p;
  p.K = 6;
  p.sweeps = 3;
  p.seed = 21;
  p.normalize = Normalize::zero_mean_unit_norm;
  const TestVectorSet tv = relax_test_vectors(g, p);
  const ComponentInfo comps = connected_components(g);
  for (uint32_t k = 0; k < p.K; ++k) {
    for (const auto& members : comps.members) {
      double mean = 0.0, norm_sq = 0.0;
      for (NodeId i : members) {
        mean += tv.value(i, k);
        norm_sq += tv.value(i, k) * tv.value(i, k);
      }
      mean /= double(members.size());
      CHECK(std::fabs(mean) <= 1e-9);
      if (members.size() == 1) {
        CHECK(tv.value(members[0], k) == 0.0);  // singleton components pin to 0
      } else {
        CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
  for (double v : tv.raw()) CHECK(std::isfinite(v));
}

TEST_CASE("monotone contraction of the max edge distance") {
  const WeightedGraph g = generate_mesh2d(9, 9);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RelaxParams p;
    p.K = 5;
    p.seed = seed;
    p.normalize = Normalize::none;
    p.sweeps = 5;
    const double before = max_edge_distance(g, relax_test_vectors(g, p));
    p.sweeps = 15;
    const double after = max_edge_distance(g, relax_test_vectors(g, p));
    CHECK(after <= before);
  }
}

TEST_CASE("global weight scaling") {
  const WeightedGraph g = testutil::random_connected_graph(20, 25, 8, true);
  RelaxParams p;
  p.K = 8;
  p.sweeps = 10;
  p.seed = 4;
  p.normalize = Normalize::none;
  const TestVectorSet tv1 = relax_test_vectors(g, p);

  auto scaled = [&](double gamma) {
    WeightedGraph::Builder b(g.n());
    for (const Edge& e : g.edges()) b.add_edge(e.u, e.v, e.w * gamma);
    return b.build();
  };

  SUBCASE("power-of-two scaling is bitwise invariant") {
    const TestVectorSet tv2 = relax_test_vectors(scaled(2.0), p);
    CHECK(tv1.raw() == tv2.raw());
  }
  SUBCASE("coupling ranking is invariant for any scaling") {
    const WeightedGraph g3 = scaled(3.0);
    const TestVectorSet tv3 = relax_test_vectors(g3, p);
    const CouplingTable t1 = build_coupling_table(g, tv1, DistanceKind::max_norm);
    const CouplingTable t3 = build_coupling_table(g3, tv3, DistanceKind::max_norm);
    std::vector<EdgeId> order1(g.m()), order3(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) order1[e] = order3[e] = e;
    auto by_coupling = [](const std::vector<double>& c) {
      return [&c](EdgeId a, EdgeId b) {
        if (c[a] != c[b]) return c[a] > c[b];
        return a < b;
      };
    };
    std::sort(order1.begin(), order1.end(), by_coupling(t1.coupling));
    std::sort(order3.begin(), order3.end(), by_coupling(t3.coupling));
    CHECK(order1 == order3);
  }
}

TEST_CASE("parameter validation") {
  const WeightedGraph g = make_graph(2, {{0, 1, 1.0}});
  RelaxParams p;
  p.K = 0;
  CHECK_THROWS_AS(relax_test_vectors(g, p), std::invalid_argument);
  p.K = 1;
  p.omega = 0.0;
  CHECK_THROWS_AS(relax_test_vectors(g, p), std::invalid_argument);
  p.omega = 1.5;
  CHECK_THROWS_AS(relax_test_vectors(g, p), std::invalid_argument);
  CHECK_THROWS_AS(relax_test_vectors(WeightedGraph{}, RelaxParams{}),
                  std::invalid_argument);
}

}  // TEST_SUITE
