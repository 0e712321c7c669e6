#pragma once

#include <iosfwd>
#include <vector>

#include "algc/graph.hpp"

namespace algc {

// Linear arrangement with center-of-mass positions: node i occupies a real
// segment of length volume(i); its position is the segment midpoint.
struct Arrangement {
  std::vector<NodeId> seq;     // rank -> node (0-based ranks)
  std::vector<uint32_t> rank;  // node -> rank
  std::vector<double> pos;     // node -> center of mass

  static Arrangement from_sequence(const WeightedGraph& g,
                                   std::vector<NodeId> seq);
  static Arrangement identity(const WeightedGraph& g);

  void recompute_positions(const WeightedGraph& g);
  size_t size() const { return seq.size(); }
};

// sum over edges of w_ij |x_i - x_j|^p for p in {1, 2}; with unit volumes
// this is the plain permutation functional.
double psum_cost(const WeightedGraph& g, const Arrangement& a, int p);

// "node rank" lines (ranks 1-based) followed by a cost line
void write_ordering(std::ostream& out, const Arrangement& a, double cost);

}  // namespace algc
