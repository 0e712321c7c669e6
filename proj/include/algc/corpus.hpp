#pragma once

#include <string>
#include <utility>
#include <vector>

#include "algc/graph.hpp"

namespace algc {

// Random simple d-regular graph via stub matching with collision-repair
// swaps; n*d must be even.
WeightedGraph generate_random_regular(uint32_t n, uint32_t d, uint64_t seed);

// Preferential attachment: m0 = m+1 seed clique, each new node attaches to m
// distinct existing nodes drawn proportionally to degree.
WeightedGraph generate_preferential_attachment(uint32_t n, uint32_t m,
                                               uint64_t seed);

// Mesh with random long-range chords (distinct non-mesh pairs, unit weight).
WeightedGraph generate_mesh_with_chords(uint32_t rows, uint32_t cols,
                                        uint32_t chords, uint64_t seed);

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

// The bundled comparison corpus: two regular families plus the irregular
// families (meshes with chords and power-law graphs) the comparison bench
// targets.
std::vector<NamedGraph> default_corpus(uint64_t seed);
std::vector<NamedGraph> irregular_corpus(uint64_t seed);

// writes <dir>/<name>.graph (METIS) for the default corpus
void write_corpus(const std::string& dir, uint64_t seed);

}  // namespace algc
