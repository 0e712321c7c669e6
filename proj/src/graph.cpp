#include "algc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace algc {

namespace {

uint64_t fnv1a(uint64_t h, uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void WeightedGraph::Builder::add_edge(NodeId u, NodeId v, double w) {
  if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (!std::isfinite(w) || w < 0.0)
    throw std::invalid_argument("edge weight must be a non-negative finite number");
  if (u == v) {
    ++self_loops_;
    return;
  }
  if (w == 0.0) {
    ++zero_weight_;
    return;
  }
  if (u > v) std::swap(u, v);
  raw_.push_back({u, v, w});
}

void WeightedGraph::Builder::set_volume(NodeId i, double v) {
  if (i >= n_) throw std::invalid_argument("node id out of range");
  if (!std::isfinite(v) || v <= 0.0)
    throw std::invalid_argument("node volume must be positive");
  volumes_[i] = v;
}

WeightedGraph WeightedGraph::Builder::build() {
  std::sort(raw_.begin(), raw_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<Edge> merged;
  merged.reserve(raw_.size());
  for (const Edge& e : raw_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
      ++merged_;
    } else {
      merged.push_back(e);
    }
  }
  WeightedGraph g;
  g.n_ = n_;
  g.edges_ = std::move(merged);
  g.volumes_ = std::move(volumes_);
  g.finalize();
  return g;
}

void WeightedGraph::finalize() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (NodeId i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adj_nodes_.resize(offsets_[n_]);
  adj_weights_.resize(offsets_[n_]);
  adj_edges_.resize(offsets_[n_]);
  std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    adj_nodes_[cursor[ed.u]] = ed.v;
    adj_weights_[cursor[ed.u]] = ed.w;
    adj_edges_[cursor[ed.u]++] = e;
    adj_nodes_[cursor[ed.v]] = ed.u;
    adj_weights_[cursor[ed.v]] = ed.w;
    adj_edges_[cursor[ed.v]++] = e;
  }
  weighted_degree_.assign(n_, 0.0);
  for (const Edge& e : edges_) {
    weighted_degree_[e.u] += e.w;
    weighted_degree_[e.v] += e.w;
  }
  total_volume_ = 0.0;
  for (double v : volumes_) total_volume_ += v;

  uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, n_);
  h = fnv1a(h, edges_.size());
  for (const Edge& e : edges_) {
    h = fnv1a(h, e.u);
    h = fnv1a(h, e.v);
    h = fnv1a(h, std::bit_cast<uint64_t>(e.w));
  }
  for (double v : volumes_) h = fnv1a(h, std::bit_cast<uint64_t>(v));
  fingerprint_ = h;
}

bool WeightedGraph::has_edge(NodeId i, NodeId j) const {
  for (NodeId k : neighbors(i))
    if (k == j) return true;
  return false;
}

double WeightedGraph::edge_weight(NodeId i, NodeId j) const {
  auto nbrs = neighbors(i);
  auto ws = neighbor_weights(i);
  for (size_t k = 0; k < nbrs.size(); ++k)
    if (nbrs[k] == j) return ws[k];
  return 0.0;
}

WeightedGraph WeightedGraph::with_edge(NodeId i, NodeId j, double w) const {
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
  if (!std::isfinite(w) || w <= 0.0)
    throw std::invalid_argument("edge weight must be positive");
  Builder b(std::max({n_, i + 1, j + 1}));
  for (const Edge& e : edges_) b.add_edge(e.u, e.v, e.w);
  b.add_edge(i, j, w);
  for (NodeId k = 0; k < n_; ++k) b.set_volume(k, volumes_[k]);
  return b.build();
}

WeightedGraph WeightedGraph::with_volumes(std::vector<double> volumes) const {
  if (volumes.size() != n_) throw std::invalid_argument("volume count mismatch");
  Builder b(n_);
  for (const Edge& e : edges_) b.add_edge(e.u, e.v, e.w);
  for (NodeId k = 0; k < n_; ++k) b.set_volume(k, volumes[k]);
  return b.build();
}

WeightedGraph add_edge(const WeightedGraph& g, NodeId i, NodeId j, double w) {
  return g.with_edge(i, j, w);
}

WeightedGraph generate_mesh2d(uint32_t rows, uint32_t cols) {
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("mesh dimensions must be at least 2x2");
  WeightedGraph::Builder b(rows * cols);
  for (uint32_t r = 0; r < rows; ++r) {
    for (uint32_t c = 0; c < cols; ++c) {
      const NodeId id = r * cols + c;
      if (c + 1 < cols) b.add_edge(id, id + 1, 1.0);
      if (r + 1 < rows) b.add_edge(id, id + cols, 1.0);
    }
  }
  return b.build();
}

double LaplacianView::row_apply(std::span<const double> x, NodeId i) const {
  auto nbrs = g_.neighbors(i);
  auto ws = g_.neighbor_weights(i);
  double acc = 0.0;
  for (size_t k = 0; k < nbrs.size(); ++k) acc += ws[k] * (x[i] - x[nbrs[k]]);
  return acc;
}

void LaplacianView::apply(std::span<const double> x, std::span<double> y) const {
  for (NodeId i = 0; i < g_.n(); ++i) y[i] = row_apply(x, i);
}

double laplacian_row_apply(const WeightedGraph& g, std::span<const double> x,
                           NodeId i) {
  return LaplacianView(g).row_apply(x, i);
}

ComponentInfo connected_components(const WeightedGraph& g) {
  ComponentInfo info;
  info.label.assign(g.n(), UINT32_MAX);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.n(); ++s) {
    if (info.label[s] != UINT32_MAX) continue;
    const uint32_t comp = info.count++;
    info.members.emplace_back();
    stack.push_back(s);
    info.label[s] = comp;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      info.members[comp].push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (info.label[v] == UINT32_MAX) {
          info.label[v] = comp;
          stack.push_back(v);
        }
      }
    }
    std::sort(info.members[comp].begin(), info.members[comp].end());
  }
  return info;
}

}  // namespace algc
