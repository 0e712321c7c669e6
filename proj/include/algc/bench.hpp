#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "algc/coarsen.hpp"
#include "algc/corpus.hpp"
#include "algc/distance.hpp"
#include "algc/graph.hpp"
#include "algc/ordering.hpp"
#include "algc/partition.hpp"

namespace algc {

// The mesh experiment geometry: a 2D mesh plus one extra edge between two
// interior nodes i and j placed 5 mesh steps apart on the middle row; q is
// i's mesh neighbor on the side facing away from j.
struct MeshPlacement {
  uint32_t rows = 33;
  uint32_t cols = 33;

  void validate() const;
  NodeId id(uint32_t r, uint32_t c) const { return r * cols + c; }
  NodeId node_i() const { return id(rows / 2, cols / 2 - 3); }
  NodeId node_j() const { return id(rows / 2, cols / 2 + 2); }
  NodeId node_q() const { return id(rows / 2, cols / 2 - 4); }
  std::vector<NodeId> mesh_neighbors(NodeId v) const;
};

struct TableConfig {
  MeshPlacement mesh{};
  std::vector<double> wij_values{1, 2, 3, 4};
  std::vector<uint32_t> K_values{1, 5, 10};
  std::vector<uint32_t> r_values{10, 20, 50, 100};
  uint32_t runs = 100;
  uint64_t seed = 42;
  DistanceKind kind = DistanceKind::max_norm;
  Normalize normalize = Normalize::none;
  double omega = 0.5;
  uint32_t threads = 1;
};

struct TableRow {
  uint32_t K = 0;
  uint32_t r = 0;
  double wij = 0.0;
  double mean = 0.0;
  double stddev = 0.0;        // sample (n-1) estimator
  double pos_fraction = 0.0;  // fraction of runs with a positive log ratio
};

// Statistics of ln(d_ij / d_i*) where d_i* is the minimum distance from i to
// its mesh neighbors; one row per (K, r, w_ij) cell.
std::vector<TableRow> bench_table1(const TableConfig& cfg);
// Statistics of ln(d_qi / d_q*) where d_q* excludes the edge back to i.
std::vector<TableRow> bench_table2(const TableConfig& cfg);

void write_table1_csv(std::ostream& out, const std::vector<TableRow>& rows);
void write_table2_csv(std::ostream& out, const std::vector<TableRow>& rows);

struct Figure1Config {
  MeshPlacement mesh{};
  double wij = 1.0;
  CouplingMode mode = CouplingMode::relaxation;
  CoarsenParams coarsen{};  // caliber forced to 1
  uint32_t runs = 100;
  uint64_t seed = 42;
  uint32_t threads = 1;
};

struct Figure1Stats {
  uint32_t runs = 0;
  uint32_t with_j = 0;              // j is in i's first non-trivial aggregate
  uint32_t with_mesh_neighbor = 0;  // that aggregate holds a mesh neighbor
                                    // of i and not j
  uint32_t alone = 0;               // i stayed a singleton on every level
};

// Caliber-1 hierarchy per run. Seeds can stay singleton aggregates for a
// level or two, so each run walks i's composite aggregate down the levels
// until it first picks up a partner, then classifies that partner set
// (a caliber-1 aggregate is connected, so it holds a graph neighbor of i:
// either j or a mesh neighbor).
Figure1Stats bench_figure1(const Figure1Config& cfg);

enum class Problem { m2sp, mla, bisect };
const char* problem_name(Problem p);

struct CompareConfig {
  Problem problem = Problem::m2sp;
  uint32_t caliber = 1;
  uint32_t runs = 100;
  uint64_t seed = 42;
  CouplingMode challenger = CouplingMode::relaxation;  // vs the classical baseline
  RelaxParams relax{.K = 10, .sweeps = 20};
  double alpha = 0.03;  // bisection imbalance
  uint32_t threads = 1;
};

struct ComparisonRow {
  std::string graph;
  Problem problem = Problem::m2sp;
  uint32_t caliber = 1;
  double ratio_before = 0.0;  // mean classical cost / mean challenger cost
  double ratio_after = 0.0;
  uint32_t runs = 0;
};

ComparisonRow bench_compare_one(const NamedGraph& g, const CompareConfig& cfg);
std::vector<ComparisonRow> bench_compare(const std::vector<NamedGraph>& graphs,
                                         const CompareConfig& cfg);
void write_compare_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

// CSV cell formatting used by all benches: 6 significant digits, C locale.
std::string csv_number(double v);

}  // namespace algc
