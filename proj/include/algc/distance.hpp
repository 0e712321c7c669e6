#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "algc/graph.hpp"
#include "algc/relax.hpp"

namespace algc {

enum class DistanceKind { max_norm, sum_squares };

// d_ij over the K relaxed test vectors:
//   max_norm:    max_k |x_i - x_j|
//   sum_squares: sum_k (x_i - x_j)^2
double edge_algebraic_distance(const TestVectorSet& tv, NodeId i, NodeId j,
                               DistanceKind kind);

// w_ij / max(sum_k w_ik, sum_k w_kj); the classical AMG strength measure
// applied to the graph weights.
double classical_coupling(const WeightedGraph& g, NodeId i, NodeId j);

enum class PNorm { p2, pinf };

// min over eta of (sum_k |eta x_i - eta^-1 x_j|^p)^(1/p). p2 uses the
// closed-form minimizer; pinf a golden-section search over log(eta).
// If either trajectory is all-zero, eta is pinned to 1 and the value is
// sqrt(S_ii + S_jj).
double general_algebraic_distance(const TestVectorSet& tv, NodeId i, NodeId j,
                                  PNorm p);

struct SetDistanceResult {
  double deviation = 0.0;
  std::vector<double> coefficients;  // aligned with the input set
};

// Least-squares deviation of the best interpolation of node i from the set S,
// solved via ridge-stabilized normal equations (lambda = 1e-10). Requires
// |S| <= K, S nonempty, i not in S.
SetDistanceResult algebraic_distance_to_set(const TestVectorSet& tv, NodeId i,
                                            std::span<const NodeId> set);

// Per-edge distances and couplings, aligned with graph.edges().
struct CouplingTable {
  static constexpr double kDistanceFloor = 1e-12;

  DistanceKind kind = DistanceKind::max_norm;
  std::vector<double> distance;   // d_ij >= 0
  std::vector<double> coupling;   // c_ij = 1 / max(d_ij, floor)
  std::vector<double> classical;  // classical AMG coupling, in [0, 1]

  // header "i,j,w,d,c,classical"
  void write_csv(std::ostream& out, const WeightedGraph& g) const;
};

CouplingTable build_coupling_table(const WeightedGraph& g,
                                   const TestVectorSet& tv, DistanceKind kind);

}  // namespace algc
