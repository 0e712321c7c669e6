#pragma once

#include "algc/arrangement.hpp"
#include "algc/coarsen.hpp"
#include "algc/graph.hpp"

namespace algc {

struct OrderingParams {
  CoarsenParams coarsen{};
  int window = 5;               // relocation window in ranks
  int intermediate_sweeps = 1;  // refinement sweeps at non-finest levels
  int max_post_sweeps = 10;     // finest-level sweeps, stop early when a sweep
                                // makes no move
  bool apply_post = true;

  void validate() const;
};

struct OrderingResult {
  Arrangement arrangement;
  double cost_before_post = 0.0;  // at the finest level, before any
                                  // finest-level refinement
  double cost_after_post = 0.0;
};

// Exhaustive minimizer with reversal-symmetry pruning; n <= 10.
Arrangement solve_coarsest_ordering(const WeightedGraph& g, int p);

// One Gauss-Seidel-like sweep: every node tries all ranks within +-window of
// its own and takes the best strict improvement. Returns the move count;
// never increases the cost.
int refine_sweep(const WeightedGraph& g, Arrangement& a, int p, int window);

// Interpolate a coarse arrangement down the hierarchy: provisional fine
// positions are P-weighted coarse positions, fine nodes are sorted by them
// (ties by id), then `sweeps` refinement sweeps run at each level.
Arrangement uncoarsen_ordering(const Hierarchy& h, const Arrangement& coarse,
                               int p, int sweeps, int window = 5);

// Full pipeline per connected component: hierarchy, exhaustive coarsest
// solve, uncoarsening with single intermediate sweeps, then finest-level
// post sweeps (the reported before/after pair).
OrderingResult solve_ordering(const WeightedGraph& g, int p,
                              const OrderingParams& params);

}  // namespace algc
