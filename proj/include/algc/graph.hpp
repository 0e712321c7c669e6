#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace algc {

using NodeId = uint32_t;
using EdgeId = uint32_t;

struct Edge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  double w = 0.0;  // > 0
};

// Undirected weighted graph with per-node volumes. Immutable once built:
// mutating operations return a new graph, so instances can be shared freely
// across threads. Adjacency is CSR over both edge directions; each CSR slot
// also carries the id of the canonical (u < v) edge so per-edge tables can
// be looked up from either endpoint.
class WeightedGraph {
 public:
  class Builder;

  WeightedGraph() = default;

  NodeId n() const { return n_; }
  EdgeId m() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  double volume(NodeId i) const { return volumes_[i]; }
  const std::vector<double>& volumes() const { return volumes_; }
  double total_volume() const { return total_volume_; }

  uint32_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  // sum of incident edge weights; the Laplacian diagonal D_ii
  double weighted_degree(NodeId i) const { return weighted_degree_[i]; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adj_nodes_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const double> neighbor_weights(NodeId i) const {
    return {adj_weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const EdgeId> neighbor_edges(NodeId i) const {
    return {adj_edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  // raw CSR arrays for the relaxation kernels
  const std::vector<uint32_t>& csr_offsets() const { return offsets_; }
  const std::vector<NodeId>& csr_nodes() const { return adj_nodes_; }
  const std::vector<double>& csr_weights() const { return adj_weights_; }

  bool has_edge(NodeId i, NodeId j) const;
  // w_ij, with w_ij = 0 meaning "no edge"
  double edge_weight(NodeId i, NodeId j) const;

  // structural + numeric hash; used to tie derived tables back to a graph
  uint64_t fingerprint() const { return fingerprint_; }

  // add_edge operation: merges with an existing edge by weight summation
  WeightedGraph with_edge(NodeId i, NodeId j, double w) const;
  WeightedGraph with_volumes(std::vector<double> volumes) const;

 private:
  void finalize();

  NodeId n_ = 0;
  std::vector<Edge> edges_;  // sorted by (u, v)
  std::vector<double> volumes_;
  std::vector<uint32_t> offsets_;
  std::vector<NodeId> adj_nodes_;
  std::vector<double> adj_weights_;
  std::vector<EdgeId> adj_edges_;
  std::vector<double> weighted_degree_;
  double total_volume_ = 0.0;
  uint64_t fingerprint_ = 0;
};

// Accumulates raw (possibly duplicated) edges, then canonicalizes:
// self-loops and zero-weight pairs are dropped, duplicates merged by
// weight summation, negative weights rejected.
class WeightedGraph::Builder {
 public:
  explicit Builder(NodeId n) : n_(n), volumes_(n, 1.0) {}

  void add_edge(NodeId u, NodeId v, double w);
  void set_volume(NodeId i, double v);

  uint64_t merged_edges() const { return merged_; }
  uint64_t dropped_self_loops() const { return self_loops_; }
  uint64_t dropped_zero_weight() const { return zero_weight_; }

  WeightedGraph build();

 private:
  NodeId n_;
  std::vector<Edge> raw_;
  std::vector<double> volumes_;
  uint64_t merged_ = 0;
  uint64_t self_loops_ = 0;
  uint64_t zero_weight_ = 0;
};

WeightedGraph add_edge(const WeightedGraph& g, NodeId i, NodeId j, double w);

// 4-connected rows x cols grid, unit weights and volumes, id = row*cols+col
WeightedGraph generate_mesh2d(uint32_t rows, uint32_t cols);

// Read-only Laplacian view: A_ii = sum_k w_ik, A_ij = -w_ij.
class LaplacianView {
 public:
  explicit LaplacianView(const WeightedGraph& g) : g_(g) {}

  double diagonal(NodeId i) const { return g_.weighted_degree(i); }
  // (A x)_i = sum_k w_ik (x_i - x_k)
  double row_apply(std::span<const double> x, NodeId i) const;
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  const WeightedGraph& g_;
};

double laplacian_row_apply(const WeightedGraph& g, std::span<const double> x,
                           NodeId i);

struct ComponentInfo {
  uint32_t count = 0;
  std::vector<uint32_t> label;  // node -> component, numbered by smallest member
  std::vector<std::vector<NodeId>> members;  // each sorted ascending
};
ComponentInfo connected_components(const WeightedGraph& g);

}  // namespace algc
