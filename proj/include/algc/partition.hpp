#pragma once

#include <iosfwd>
#include <vector>

#include "algc/coarsen.hpp"
#include "algc/graph.hpp"

namespace algc {

// Two-way partition; sides labeled 1 and 2, both nonempty.
struct Bipartition {
  std::vector<uint8_t> side;
  double alpha = 0.0;  // imbalance factor the partition was built for

  // relabel so that node 0 is on side 1
  void canonicalize();
};

double cut_cost(const WeightedGraph& g, const Bipartition& b);

struct BisectionParams {
  CoarsenParams coarsen{};
  int max_fm_passes = 30;        // per refinement stage
  int intermediate_passes = 1;   // FM passes at non-finest levels
  bool apply_post = true;        // finest-level FM passes until no improvement

  BisectionParams() { coarsen.coarsest_size = 16; }
  void validate() const;
};

struct BisectionResult {
  Bipartition partition;
  double cut = 0.0;
  double cut_before_post = 0.0;  // at the finest level, before finest FM
};

// Exhaustive minimum cut over all balanced bipartitions; n <= 20. Balance is
// volume-based unless by_count. When no bipartition satisfies the balance
// bound, the most balanced minimum-cut split is returned instead.
Bipartition solve_coarsest_bisection(const WeightedGraph& g, double alpha,
                                     bool by_count);

// Boundary Fiduccia-Mattheyses refinement: repeated passes of best-gain
// balance-feasible moves with best-prefix rollback, until a pass stops
// improving. Returns the final cut; never increases it.
double fm_refine(const WeightedGraph& g, Bipartition& b, double alpha,
                 bool by_count, int max_passes = 30);

// Multilevel bisection: hierarchy, exhaustive coarsest split, majority
// projection of sides down each level with FM refinement (volume balance on
// coarse levels, node counts at the finest).
BisectionResult solve_bisection(const WeightedGraph& g, double alpha,
                                const BisectionParams& params);

// "node side" lines followed by a cut line
void write_bipartition(std::ostream& out, const Bipartition& b, double cut);

}  // namespace algc
