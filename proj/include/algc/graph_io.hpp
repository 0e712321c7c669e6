#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "algc/graph.hpp"

namespace algc {

enum class GraphFormat { edge_list, metis, matrix_market };

struct ParseStats {
  uint64_t merged_edges = 0;
  uint64_t dropped_self_loops = 0;
  uint64_t dropped_zero_weight = 0;
};

struct ParseResult {
  WeightedGraph graph;
  ParseStats stats;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

ParseResult parse_graph(std::istream& in, GraphFormat format);
ParseResult parse_graph_file(const std::string& path,
                             std::optional<GraphFormat> format = {});

// Deterministic ordering: edges ascending by (u, v). Weights and volumes are
// written with shortest round-trip formatting, so parse(write(g)) == g
// numerically. Edge-list and Matrix Market cannot carry volumes; METIS can
// (fmt bit, real-valued vertex weights).
void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format);
void write_graph_file(const std::string& path, const WeightedGraph& g,
                      std::optional<GraphFormat> format = {});

std::optional<GraphFormat> format_from_name(const std::string& name);
GraphFormat format_from_path(const std::string& path);
const char* format_name(GraphFormat f);

}  // namespace algc
