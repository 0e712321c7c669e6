#include "algc/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace algc {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

uint64_t parse_uint(std::string_view tok, size_t line, const char* what) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v);
  if (ec != std::errc{} || p != tok.end())
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(tok) + "'");
  return v;
}

double parse_real(std::string_view tok, size_t line, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v);
  if (ec != std::errc{} || p != tok.end())
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(tok) + "'");
  return v;
}

void check_weight(double w, size_t line) {
  if (!std::isfinite(w)) throw ParseError(line, "edge weight is not finite");
  if (w < 0.0) throw ParseError(line, "negative edge weight");
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

ParseResult finish(WeightedGraph::Builder& b) {
  ParseResult r;
  r.graph = b.build();
  r.stats.merged_edges = b.merged_edges();
  r.stats.dropped_self_loops = b.dropped_self_loops();
  r.stats.dropped_zero_weight = b.dropped_zero_weight();
  return r;
}

// --- edge list: "u v [w]" per line, 0-indexed, '#' comments -----------------

ParseResult parse_edge_list(std::istream& in) {
  struct Raw {
    NodeId u, v;
    double w;
  };
  std::vector<Raw> raw;
  NodeId max_id = 0;
  bool any = false;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw ParseError(lineno, "expected 'u v [w]'");
    NodeId u = static_cast<NodeId>(parse_uint(toks[0], lineno, "node id"));
    NodeId v = static_cast<NodeId>(parse_uint(toks[1], lineno, "node id"));
    double w = toks.size() == 3 ? parse_real(toks[2], lineno, "edge weight") : 1.0;
    check_weight(w, lineno);
    raw.push_back({u, v, w});
    max_id = std::max({max_id, u, v});
    any = true;
  }
  WeightedGraph::Builder b(any ? max_id + 1 : 0);
  for (const Raw& r : raw) b.add_edge(r.u, r.v, r.w);
  return finish(b);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "# " << g.n() << " nodes, " << g.m() << " edges\n";
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

// --- METIS: 1-indexed, header "n m [fmt [ncon]]", '%' comments --------------

ParseResult parse_metis(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  auto next_content_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (auto pct = line.find('%'); pct != std::string::npos) line.resize(pct);
      if (!split_ws(line).empty()) return true;
    }
    if (required) throw ParseError(lineno, "unexpected end of file");
    return false;
  };
  if (!next_content_line(false)) throw ParseError(1, "missing METIS header");
  auto head = split_ws(line);
  if (head.size() < 2 || head.size() > 4)
    throw ParseError(lineno, "METIS header must be 'n m [fmt [ncon]]'");
  const uint64_t n = parse_uint(head[0], lineno, "node count");
  const uint64_t m = parse_uint(head[1], lineno, "edge count");
  bool has_edge_weights = false, has_vertex_weights = false;
  uint64_t ncon = 1;
  if (head.size() >= 3) {
    std::string fmt(head[2]);
    for (char c : fmt)
      if (c != '0' && c != '1')
        throw ParseError(lineno, "METIS fmt field must be binary digits");
    if (!fmt.empty() && fmt.back() == '1') has_edge_weights = true;
    if (fmt.size() >= 2 && fmt[fmt.size() - 2] == '1') has_vertex_weights = true;
    if (fmt.size() >= 3 && fmt[fmt.size() - 3] == '1')
      throw ParseError(lineno, "METIS vertex sizes are not supported");
  }
  if (head.size() == 4) ncon = parse_uint(head[3], lineno, "ncon");
  if (has_vertex_weights && ncon < 1)
    throw ParseError(lineno, "ncon must be at least 1");

  WeightedGraph::Builder b(static_cast<NodeId>(n));
  // one directed mention per side; both sides must agree
  std::map<std::pair<NodeId, NodeId>, std::pair<double, int>> sides;
  uint64_t self_loops = 0;
  for (uint64_t i = 0; i < n; ++i) {
    if (!next_content_line(true)) {}
    auto toks = split_ws(line);
    size_t t = 0;
    if (has_vertex_weights) {
      if (toks.size() < ncon)
        throw ParseError(lineno, "missing vertex weight(s)");
      double vol = parse_real(toks[0], lineno, "vertex weight");
      if (!(vol > 0.0))
        throw ParseError(lineno, "vertex weight (volume) must be positive");
      b.set_volume(static_cast<NodeId>(i), vol);
      t = ncon;
    }
    const size_t step = has_edge_weights ? 2 : 1;
    if ((toks.size() - t) % step != 0)
      throw ParseError(lineno, "odd token count in weighted adjacency list");
    for (; t < toks.size(); t += step) {
      uint64_t nbr1 = parse_uint(toks[t], lineno, "neighbor id");
      if (nbr1 < 1 || nbr1 > n)
        throw ParseError(lineno, "neighbor id out of range (METIS is 1-indexed)");
      double w = 1.0;
      if (has_edge_weights) w = parse_real(toks[t + 1], lineno, "edge weight");
      check_weight(w, lineno);
      NodeId u = static_cast<NodeId>(i);
      NodeId v = static_cast<NodeId>(nbr1 - 1);
      if (u == v) {
        ++self_loops;
        continue;
      }
      auto key = std::minmax(u, v);
      auto it = sides.find({key.first, key.second});
      if (it == sides.end()) {
        sides.emplace(std::make_pair(key.first, key.second), std::make_pair(w, 1));
      } else {
        if (it->second.second >= 2)
          throw ParseError(lineno, "edge " + std::to_string(u) + "-" +
                                       std::to_string(v) +
                                       " listed more than twice");
        double other = it->second.first;
        if (std::abs(other - w) > 1e-9 * std::max(1.0, std::abs(other)))
          throw ParseError(lineno, "asymmetric weight for edge " +
                                       std::to_string(u) + "-" + std::to_string(v));
        it->second.second = 2;
      }
    }
  }
  for (const auto& [key, val] : sides) {
    if (val.second != 2)
      throw ParseError(lineno, "edge " + std::to_string(key.first) + "-" +
                                   std::to_string(key.second) +
                                   " listed from one side only");
    b.add_edge(key.first, key.second, val.first);
  }
  if (sides.size() != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) +
                                 " edges, file contains " +
                                 std::to_string(sides.size()));
  ParseResult r = finish(b);
  r.stats.dropped_self_loops += self_loops / 2;  // each loop mentioned once per side
  return r;
}

void write_metis(std::ostream& out, const WeightedGraph& g) {
  bool volumes = false;
  for (double v : g.volumes())
    if (v != 1.0) volumes = true;
  out << g.n() << ' ' << g.m() << ' ' << (volumes ? "011" : "001") << '\n';
  for (NodeId i = 0; i < g.n(); ++i) {
    bool first = true;
    if (volumes) {
      out << format_double(g.volume(i));
      first = false;
    }
    auto nbrs = g.neighbors(i);
    auto ws = g.neighbor_weights(i);
    // ascending neighbor order for deterministic output
    std::vector<size_t> idx(nbrs.size());
    for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return nbrs[a] < nbrs[b]; });
    for (size_t k : idx) {
      if (!first) out << ' ';
      out << (nbrs[k] + 1) << ' ' << format_double(ws[k]);
      first = false;
    }
    out << '\n';
  }
}

// --- Matrix Market: coordinate real/pattern symmetric ------------------------

ParseResult parse_matrix_market(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty Matrix Market file");
  ++lineno;
  auto head = split_ws(line);
  std::vector<std::string> h;
  for (auto t : head) {
    std::string s(t);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    h.push_back(s);
  }
  if (h.size() < 5 || h[0] != "%%matrixmarket" || h[1] != "matrix")
    throw ParseError(1, "missing '%%MatrixMarket matrix' banner");
  if (h[2] != "coordinate")
    throw ParseError(1, "only coordinate format is supported");
  const bool pattern = h[3] == "pattern";
  if (!pattern && h[3] != "real")
    throw ParseError(1, "only real or pattern fields are supported");
  if (h[4] != "symmetric")
    throw ParseError(1, "only symmetric matrices are supported");

  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      if (!split_ws(line).empty()) return true;
    }
    return false;
  };
  if (!next_content_line()) throw ParseError(lineno, "missing size line");
  auto size_toks = split_ws(line);
  if (size_toks.size() != 3)
    throw ParseError(lineno, "size line must be 'rows cols nnz'");
  const uint64_t rows = parse_uint(size_toks[0], lineno, "row count");
  const uint64_t cols = parse_uint(size_toks[1], lineno, "column count");
  const uint64_t nnz = parse_uint(size_toks[2], lineno, "entry count");
  if (rows != cols) throw ParseError(lineno, "matrix must be square");

  WeightedGraph::Builder b(static_cast<NodeId>(rows));
  for (uint64_t k = 0; k < nnz; ++k) {
    if (!next_content_line()) throw ParseError(lineno, "unexpected end of file");
    auto toks = split_ws(line);
    const size_t want = pattern ? 2 : 3;
    if (toks.size() != want)
      throw ParseError(lineno, pattern ? "expected 'i j'" : "expected 'i j value'");
    uint64_t i1 = parse_uint(toks[0], lineno, "row index");
    uint64_t j1 = parse_uint(toks[1], lineno, "column index");
    if (i1 < 1 || i1 > rows || j1 < 1 || j1 > rows)
      throw ParseError(lineno, "index out of range (Matrix Market is 1-indexed)");
    double w = 1.0;
    if (!pattern) {
      w = parse_real(toks[2], lineno, "entry value");
      check_weight(w, lineno);
    }
    b.add_edge(static_cast<NodeId>(i1 - 1), static_cast<NodeId>(j1 - 1), w);
  }
  return finish(b);
}

void write_matrix_market(std::ostream& out, const WeightedGraph& g) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.n() << ' ' << g.n() << ' ' << g.m() << '\n';
  // lower triangle: row > col, 1-indexed
  for (const Edge& e : g.edges())
    out << (e.v + 1) << ' ' << (e.u + 1) << ' ' << format_double(e.w) << '\n';
}

}  // namespace

ParseResult parse_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::edge_list: return parse_edge_list(in);
    case GraphFormat::metis: return parse_metis(in);
    case GraphFormat::matrix_market: return parse_matrix_market(in);
  }
  throw std::logic_error("unreachable");
}

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format) {
  switch (format) {
    case GraphFormat::edge_list: write_edge_list(out, g); return;
    case GraphFormat::metis: write_metis(out, g); return;
    case GraphFormat::matrix_market: write_matrix_market(out, g); return;
  }
  throw std::logic_error("unreachable");
}

std::optional<GraphFormat> format_from_name(const std::string& name) {
  if (name == "edge-list" || name == "edgelist" || name == "el")
    return GraphFormat::edge_list;
  if (name == "metis" || name == "graph") return GraphFormat::metis;
  if (name == "matrix-market" || name == "mtx" || name == "mm")
    return GraphFormat::matrix_market;
  return std::nullopt;
}

GraphFormat format_from_path(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "mtx" || ext == "mm") return GraphFormat::matrix_market;
  if (ext == "graph" || ext == "metis") return GraphFormat::metis;
  return GraphFormat::edge_list;  // txt, el, anything else
}

const char* format_name(GraphFormat f) {
  switch (f) {
    case GraphFormat::edge_list: return "edge-list";
    case GraphFormat::metis: return "metis";
    case GraphFormat::matrix_market: return "matrix-market";
  }
  return "?";
}

ParseResult parse_graph_file(const std::string& path,
                             std::optional<GraphFormat> format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_graph(in, format.value_or(format_from_path(path)));
}

void write_graph_file(const std::string& path, const WeightedGraph& g,
                      std::optional<GraphFormat> format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_graph(out, g, format.value_or(format_from_path(path)));
}

}  // namespace algc
