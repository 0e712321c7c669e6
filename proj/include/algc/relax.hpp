#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "algc/graph.hpp"

namespace algc {

enum class Normalize { none, zero_mean_unit_norm };

struct RelaxParams {
  uint32_t K = 20;      // number of test vectors
  uint32_t sweeps = 10; // r
  double omega = 0.5;   // damping
  uint64_t seed = 0;
  Normalize normalize = Normalize::zero_mean_unit_norm;

  void validate() const;
};

// K relaxed test vectors over the nodes of one graph, stored node-major
// (all K lane values of a node are contiguous; lanes are padded to a
// multiple of 4 for the SIMD kernels, padding stays zero).
class TestVectorSet {
 public:
  TestVectorSet() = default;
  TestVectorSet(uint32_t n, uint32_t k, RelaxParams params, uint64_t graph_fp);

  uint32_t n() const { return n_; }
  uint32_t k() const { return k_; }
  uint32_t stride() const { return stride_; }
  const RelaxParams& params() const { return params_; }
  uint64_t graph_fingerprint() const { return graph_fp_; }

  const double* lane(NodeId i) const { return data_.data() + size_t(i) * stride_; }
  double* lane(NodeId i) { return data_.data() + size_t(i) * stride_; }
  double value(NodeId i, uint32_t k) const { return data_[size_t(i) * stride_ + k]; }

  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

  // debugging dump: header "node,k,value"
  void write_csv(std::ostream& out) const;

 private:
  uint32_t n_ = 0, k_ = 0, stride_ = 0;
  std::vector<double> data_;
  RelaxParams params_;
  uint64_t graph_fp_ = 0;
};

// Damped-Jacobi relaxation of K seeded random vectors on the homogeneous
// Laplacian system, then optional per-component zero-mean/unit-norm
// normalization. Deterministic given (graph, params); nodes with no
// neighbors are left at their initial value (and become 0 under
// normalization, being single-node components).
TestVectorSet relax_test_vectors(const WeightedGraph& g, const RelaxParams& p);

}  // namespace algc
