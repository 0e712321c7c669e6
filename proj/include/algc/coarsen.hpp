#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "algc/distance.hpp"
#include "algc/graph.hpp"
#include "algc/relax.hpp"

namespace algc {

enum class CouplingMode { relaxation, classical, algebraic_only };

const char* coupling_mode_name(CouplingMode m);

struct CoarsenParams {
  double strength_threshold = 0.5;   // Q: a scanned node stays fine only if its
                                     // relative coupling to the seed set is
                                     // at or above this
  double volume_factor = 2.0;        // nu: pre-seed nodes whose future volume
                                     // exceeds nu times the mean
  double coupling_filter = 0.5;      // beta: keep candidate aggregates within
                                     // this fraction of the strongest coupling
  uint32_t caliber = 1;              // max aggregates per interpolation row (1 or 2)
  CouplingMode mode = CouplingMode::relaxation;
  RelaxParams relax{};               // relax.seed doubles as the master seed
  DistanceKind distance_kind = DistanceKind::max_norm;
  uint32_t max_levels = 64;
  uint32_t coarsest_size = 8;
  double stall_ratio = 0.98;         // stop when |C|/|V| exceeds this

  void validate() const;
};

// Row-stochastic fine-to-coarse membership matrix P. Seed rows carry a single
// unit entry; other rows hold 1..caliber positive entries summing to 1.
struct InterpolationMap {
  uint32_t fine_n = 0;
  uint32_t coarse_n = 0;
  std::vector<uint32_t> offsets;   // fine_n + 1
  std::vector<uint32_t> cols;      // coarse ordinals
  std::vector<double> vals;
  std::vector<NodeId> seed_nodes;  // coarse ordinal -> fine node id, ascending

  std::span<const uint32_t> row_cols(NodeId i) const {
    return {cols.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::span<const double> row_vals(NodeId i) const {
    return {vals.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  double row_sum(NodeId i) const;
  // caliber-1 convenience: the unique aggregate of a single-entry row
  uint32_t single_aggregate(NodeId i) const;

  // CSV triplets "fine,coarse,weight"
  void write_csv(std::ostream& out) const;
};

// Per-edge strength fields driving one coarsening level, derived from the
// coupling mode:
//   relaxation:     primary = algebraic coupling c, pick = graph weight w
//   classical:      primary = w,                    pick = w
//   algebraic-only: primary = c,                    pick = c (single ratio test)
struct EdgeStrengths {
  std::vector<double> primary;
  std::vector<double> pick;
  bool dual_ratio_test = true;
};

EdgeStrengths edge_strengths(const WeightedGraph& g, CouplingMode mode,
                             const CouplingTable* table);

// future volume of node i: v_i plus the volume fractions its neighbors would
// send to i, using the coupling field selected by the mode
double future_volume(const WeightedGraph& g, const CouplingTable& table,
                     NodeId i, CouplingMode mode = CouplingMode::relaxation);

std::vector<double> future_volumes(const WeightedGraph& g,
                                   std::span<const double> primary);

// Seed selection: pre-seed nodes with future volume > nu * mean, then scan
// the rest in descending future volume (ties by ascending id) and promote any
// node whose relative coupling to the current seed set is below Q.
std::vector<NodeId> select_coarse_nodes(const WeightedGraph& g,
                                        const CouplingTable& table,
                                        const CoarsenParams& params);
std::vector<NodeId> select_coarse_nodes(const WeightedGraph& g,
                                        const EdgeStrengths& s,
                                        const CoarsenParams& params);

// Coarse neighborhood of a fine node: its seed neighbors, filtered to those
// within beta of the strongest primary coupling, then the `caliber` best by
// pick weight (ties by larger primary coupling, then lower id).
std::vector<NodeId> coarse_neighborhood(const WeightedGraph& g,
                                        const CouplingTable& table, NodeId i,
                                        std::span<const NodeId> seeds,
                                        uint32_t caliber, double beta,
                                        CouplingMode mode = CouplingMode::relaxation);

// Promote any non-seed node with no seed neighbor (returns how many).
uint32_t rescue_uncovered(const WeightedGraph& g, std::vector<NodeId>& seeds);

InterpolationMap build_interpolation(const WeightedGraph& g,
                                     const EdgeStrengths& s,
                                     std::span<const NodeId> seeds,
                                     const CoarsenParams& params);
InterpolationMap build_interpolation(const WeightedGraph& g,
                                     const CouplingTable& table,
                                     std::span<const NodeId> seeds,
                                     const CoarsenParams& params);

// Galerkin coarse graph: w_pq = sum_{k != l} P_kp w_kl P_lq with self-loops
// discarded and coarse weights below 1e-12 dropped; coarse volume of
// aggregate p is sum_j v_j P_jp.
WeightedGraph build_coarse_graph(const WeightedGraph& g,
                                 const InterpolationMap& P);

enum class StopReason { coarse_enough, level_cap, stalled };
const char* stop_reason_name(StopReason r);

struct LevelStats {
  uint32_t seeds = 0;
  uint32_t rescued = 0;
};

struct Hierarchy {
  std::vector<WeightedGraph> graphs;          // [0] = finest
  std::vector<InterpolationMap> maps;         // maps[l]: graphs[l] -> graphs[l+1]
  std::vector<std::vector<NodeId>> seed_sets; // per constructed level
  std::vector<LevelStats> stats;
  StopReason stop = StopReason::coarse_enough;

  size_t levels() const { return graphs.size(); }
  const WeightedGraph& coarsest() const { return graphs.back(); }
};

// Recursive coarsening with fresh test vectors at every level (level seeds
// derived from the master seed). Stops at coarsest_size, the level cap, or a
// stalled seed selection.
Hierarchy build_hierarchy(const WeightedGraph& g, const CoarsenParams& params);

}  // namespace algc
