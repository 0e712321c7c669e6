#include "algc/relax.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "algc/kernels.hpp"
#include "algc/rng.hpp"

namespace algc {

void RelaxParams::validate() const {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (!(omega > 0.0) || omega > 1.0)
    throw std::invalid_argument("omega must be in (0, 1]");
}

TestVectorSet::TestVectorSet(uint32_t n, uint32_t k, RelaxParams params,
                             uint64_t graph_fp)
    : n_(n),
      k_(k),
      stride_((k + 3u) & ~3u),
      data_(size_t(n) * ((k + 3u) & ~3u), 0.0),
      params_(params),
      graph_fp_(graph_fp) {}

void TestVectorSet::write_csv(std::ostream& out) const {
  out << "node,k,value\n";
  char buf[64];
  for (NodeId i = 0; i < n_; ++i) {
    for (uint32_t k = 0; k < k_; ++k) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value(i, k));
      (void)ec;
      out << i << ',' << k << ',' << std::string_view(buf, p - buf) << '\n';
    }
  }
}

TestVectorSet relax_test_vectors(const WeightedGraph& g, const RelaxParams& p) {
  p.validate();
  if (g.n() == 0) throw std::invalid_argument("graph is empty");

  TestVectorSet tv(g.n(), p.K, p, g.fingerprint());
  const uint32_t stride = tv.stride();

  // independent seeded stream per vector
  for (uint32_t k = 0; k < p.K; ++k) {
    SplitMix64 rng(mix_seed(p.seed, k));
    for (NodeId i = 0; i < g.n(); ++i)
      tv.raw()[size_t(i) * stride + k] = rng.next_centered();
  }

  std::vector<double> inv_wdeg(g.n(), 0.0);
  for (NodeId i = 0; i < g.n(); ++i)
    if (g.degree(i) > 0) inv_wdeg[i] = 1.0 / g.weighted_degree(i);

  const auto& kr = kernels::ops();
  std::vector<double> scratch(tv.raw().size());
  double* cur = tv.raw().data();
  double* nxt = scratch.data();
  for (uint32_t s = 0; s < p.sweeps; ++s) {
    kr.jacobi_sweep(g.n(), g.csr_offsets().data(), g.csr_nodes().data(),
                    g.csr_weights().data(), inv_wdeg.data(), p.omega, cur, nxt,
                    stride);
    std::swap(cur, nxt);
  }
  if (cur != tv.raw().data()) tv.raw().swap(scratch);

  if (p.normalize == Normalize::zero_mean_unit_norm) {
    const ComponentInfo comps = connected_components(g);
    for (uint32_t k = 0; k < p.K; ++k) {
      for (const auto& members : comps.members) {
        double mean = 0.0;
        for (NodeId i : members) mean += tv.value(i, k);
        mean /= static_cast<double>(members.size());
        double norm_sq = 0.0;
        for (NodeId i : members) {
          double& x = tv.raw()[size_t(i) * tv.stride() + k];
          x -= mean;
          norm_sq += x * x;
        }
        // single-node components end at exactly 0; a numerically constant
        // vector on a component stays at 0 rather than being blown up
        if (norm_sq > 1e-300) {
          const double inv_norm = 1.0 / std::sqrt(norm_sq);
          for (NodeId i : members) tv.raw()[size_t(i) * tv.stride() + k] *= inv_norm;
        }
      }
    }
  }
  return tv;
}

}  // namespace algc
