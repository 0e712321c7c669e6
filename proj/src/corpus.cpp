#include "algc/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "algc/graph_io.hpp"
#include "algc/rng.hpp"

namespace algc {

WeightedGraph generate_random_regular(uint32_t n, uint32_t d, uint64_t seed) {
  if (d < 1 || d >= n) throw std::invalid_argument("need 1 <= d < n");
  if ((uint64_t(n) * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
  SplitMix64 rng(mix_seed(seed, 0x5e6));

  std::vector<NodeId> stubs;
  stubs.reserve(size_t(n) * d);
  for (NodeId i = 0; i < n; ++i)
    for (uint32_t k = 0; k < d; ++k) stubs.push_back(i);
  for (size_t i = stubs.size(); i-- > 1;)
    std::swap(stubs[i], stubs[rng.next_below(i + 1)]);

  std::vector<std::pair<NodeId, NodeId>> pairs(stubs.size() / 2);
  for (size_t t = 0; t < pairs.size(); ++t)
    pairs[t] = {stubs[2 * t], stubs[2 * t + 1]};

  auto canon = [](std::pair<NodeId, NodeId> p) {
    if (p.first > p.second) std::swap(p.first, p.second);
    return p;
  };

  // repair self-loops and duplicate pairs by random pair swaps
  for (uint32_t round = 0; round < 500; ++round) {
    std::vector<size_t> bad;
    std::set<std::pair<NodeId, NodeId>> dedup;
    for (size_t t = 0; t < pairs.size(); ++t) {
      if (pairs[t].first == pairs[t].second || !dedup.insert(canon(pairs[t])).second)
        bad.push_back(t);
    }
    if (bad.empty()) break;
    for (size_t t : bad) {
      const size_t other = rng.next_below(pairs.size());
      std::swap(pairs[t].second, pairs[other].second);
    }
  }

  WeightedGraph::Builder b(n);
  std::set<std::pair<NodeId, NodeId>> final_check;
  for (auto& p : pairs) {
    if (p.first == p.second || !final_check.insert(canon(p)).second)
      throw std::runtime_error("regular-graph repair did not converge; change the seed");
    b.add_edge(p.first, p.second, 1.0);
  }
  return b.build();
}

WeightedGraph generate_preferential_attachment(uint32_t n, uint32_t m,
                                               uint64_t seed) {
  if (m < 1 || n <= m + 1) throw std::invalid_argument("need n > m+1, m >= 1");
  SplitMix64 rng(mix_seed(seed, 0xba));
  WeightedGraph::Builder b(n);
  std::vector<NodeId> targets;  // one entry per incident edge end
  const uint32_t m0 = m + 1;
  for (NodeId i = 0; i < m0; ++i) {
    for (NodeId j = i + 1; j < m0; ++j) {
      b.add_edge(i, j, 1.0);
      targets.push_back(i);
      targets.push_back(j);
    }
  }
  std::vector<NodeId> chosen;
  for (NodeId v = m0; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < size_t(m)) {
      const NodeId t = targets[rng.next_below(targets.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
        chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      b.add_edge(v, t, 1.0);
      targets.push_back(v);
      targets.push_back(t);
    }
  }
  return b.build();
}

WeightedGraph generate_mesh_with_chords(uint32_t rows, uint32_t cols,
                                        uint32_t chords, uint64_t seed) {
  WeightedGraph mesh = generate_mesh2d(rows, cols);
  SplitMix64 rng(mix_seed(seed, 0xc0));
  WeightedGraph::Builder b(mesh.n());
  std::set<std::pair<NodeId, NodeId>> present;
  for (const Edge& e : mesh.edges()) {
    b.add_edge(e.u, e.v, e.w);
    present.insert({e.u, e.v});
  }
  uint32_t added = 0;
  while (added < chords) {
    NodeId u = static_cast<NodeId>(rng.next_below(mesh.n()));
    NodeId v = static_cast<NodeId>(rng.next_below(mesh.n()));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!present.insert({u, v}).second) continue;
    b.add_edge(u, v, 1.0);
    ++added;
  }
  return b.build();
}

std::vector<NamedGraph> irregular_corpus(uint64_t seed) {
  std::vector<NamedGraph> out;
  out.push_back({"mesh33x33+c50", generate_mesh_with_chords(33, 33, 50, mix_seed(seed, 1))});
  out.push_back({"mesh40x40+c80", generate_mesh_with_chords(40, 40, 80, mix_seed(seed, 2))});
  out.push_back({"mesh25x50+c60", generate_mesh_with_chords(25, 50, 60, mix_seed(seed, 3))});
  out.push_back({"powerlaw800m2", generate_preferential_attachment(800, 2, mix_seed(seed, 4))});
  out.push_back({"powerlaw1500m2", generate_preferential_attachment(1500, 2, mix_seed(seed, 5))});
  out.push_back({"powerlaw3000m3", generate_preferential_attachment(3000, 3, mix_seed(seed, 6))});
  return out;
}

std::vector<NamedGraph> default_corpus(uint64_t seed) {
  std::vector<NamedGraph> out;
  out.push_back({"mesh33x33", generate_mesh2d(33, 33)});
  out.push_back({"regular600d4", generate_random_regular(600, 4, mix_seed(seed, 7))});
  for (auto& g : irregular_corpus(seed)) out.push_back(std::move(g));
  return out;
}

void write_corpus(const std::string& dir, uint64_t seed) {
  std::filesystem::create_directories(dir);
  for (const NamedGraph& ng : default_corpus(seed)) {
    const std::string path = dir + "/" + ng.name + ".graph";
    write_graph_file(path, ng.graph, GraphFormat::metis);
  }
}

}  // namespace algc
