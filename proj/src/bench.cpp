#include "algc/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "algc/rng.hpp"
#include "algc/threading.hpp"

namespace algc {

void MeshPlacement::validate() const {
  if (rows < 3 || cols < 10)
    throw std::invalid_argument(
        "mesh must be at least 3x10 to place i, j and q in the interior");
}

std::vector<NodeId> MeshPlacement::mesh_neighbors(NodeId v) const {
  const uint32_t r = v / cols, c = v % cols;
  std::vector<NodeId> out;
  if (r > 0) out.push_back(id(r - 1, c));
  if (c > 0) out.push_back(id(r, c - 1));
  if (c + 1 < cols) out.push_back(id(r, c + 1));
  if (r + 1 < rows) out.push_back(id(r + 1, c));
  return out;
}

std::string csv_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                               std::chars_format::general, 6);
  (void)ec;
  return std::string(buf, p);
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
  double pos_fraction = 0.0;
};

MeanStd summarize(const std::vector<double>& xs) {
  MeanStd out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(acc / (n - 1.0));
  }
  uint32_t pos = 0;
  for (double x : xs)
    if (x > 0.0) ++pos;
  out.pos_fraction = pos / n;
  return out;
}

// shared driver for both mesh tables
std::vector<TableRow> run_mesh_table(const TableConfig& cfg, bool table2) {
  cfg.mesh.validate();
  if (cfg.runs < 1) throw std::invalid_argument("runs must be at least 1");
  const NodeId node_i = cfg.mesh.node_i();
  const NodeId node_j = cfg.mesh.node_j();
  const NodeId node_q = cfg.mesh.node_q();
  const WeightedGraph base = generate_mesh2d(cfg.mesh.rows, cfg.mesh.cols);

  std::vector<TableRow> rows;
  uint32_t cell = 0;
  for (uint32_t K : cfg.K_values) {
    for (uint32_t r : cfg.r_values) {
      for (double wij : cfg.wij_values) {
        const WeightedGraph g = base.with_edge(node_i, node_j, wij);
        std::vector<double> ratios(cfg.runs);
        parallel_runs(cfg.runs, cfg.threads, [&](uint32_t run) {
          RelaxParams rp;
          rp.K = K;
          rp.sweeps = r;
          rp.omega = cfg.omega;
          rp.normalize = cfg.normalize;
          rp.seed = mix_seed(cfg.seed, uint64_t(cell) * 1000003u + run);
          const TestVectorSet tv = relax_test_vectors(g, rp);
          double num, denom;
          if (!table2) {
            num = edge_algebraic_distance(tv, node_i, node_j, cfg.kind);
            denom = INFINITY;
            for (NodeId s : cfg.mesh.mesh_neighbors(node_i))
              denom = std::min(denom,
                               edge_algebraic_distance(tv, node_i, s, cfg.kind));
          } else {
            num = edge_algebraic_distance(tv, node_q, node_i, cfg.kind);
            denom = INFINITY;
            for (NodeId s : cfg.mesh.mesh_neighbors(node_q)) {
              if (s == node_i) continue;
              denom = std::min(denom,
                               edge_algebraic_distance(tv, node_q, s, cfg.kind));
            }
          }
          ratios[run] = std::log(num / denom);
        });
        const MeanStd ms = summarize(ratios);
        rows.push_back({K, r, wij, ms.mean, ms.stddev, ms.pos_fraction});
        ++cell;
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<TableRow> bench_table1(const TableConfig& cfg) {
  return run_mesh_table(cfg, false);
}

std::vector<TableRow> bench_table2(const TableConfig& cfg) {
  return run_mesh_table(cfg, true);
}

void write_table1_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "K,r,w_ij,mean_ln_ratio,std_ln_ratio\n";
  for (const TableRow& r : rows)
    out << r.K << ',' << r.r << ',' << csv_number(r.wij) << ','
        << csv_number(r.mean) << ',' << csv_number(r.stddev) << '\n';
}

void write_table2_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "K,r,w_ij,mean_ln_ratio,std_ln_ratio,pos_fraction\n";
  for (const TableRow& r : rows)
    out << r.K << ',' << r.r << ',' << csv_number(r.wij) << ','
        << csv_number(r.mean) << ',' << csv_number(r.stddev) << ','
        << csv_number(r.pos_fraction) << '\n';
}

Figure1Stats bench_figure1(const Figure1Config& cfg) {
  cfg.mesh.validate();
  const NodeId node_i = cfg.mesh.node_i();
  const NodeId node_j = cfg.mesh.node_j();
  const WeightedGraph g =
      generate_mesh2d(cfg.mesh.rows, cfg.mesh.cols).with_edge(node_i, node_j, cfg.wij);
  const std::vector<NodeId> mesh_nbrs = cfg.mesh.mesh_neighbors(node_i);

  CoarsenParams params = cfg.coarsen;
  params.caliber = 1;
  params.mode = cfg.mode;
  params.validate();

  // classical coarsening ignores the seed entirely, so every run is identical
  const uint32_t independent_runs =
      cfg.mode == CouplingMode::classical ? 1 : cfg.runs;

  std::vector<uint8_t> outcome(independent_runs);  // 0 alone, 1 with j, 2 with nbr
  parallel_runs(independent_runs, cfg.threads, [&](uint32_t run) {
    CoarsenParams p = params;
    p.relax.seed = mix_seed(cfg.seed, run);
    const Hierarchy h = build_hierarchy(g, p);

    // composite aggregate ordinal of each fine node, walked level by level
    std::vector<uint32_t> agg(g.n());
    for (NodeId v = 0; v < g.n(); ++v) agg[v] = v;
    outcome[run] = 0;
    for (const InterpolationMap& P : h.maps) {
      for (NodeId v = 0; v < g.n(); ++v) agg[v] = P.single_aggregate(agg[v]);
      const uint32_t agg_i = agg[node_i];
      if (agg[node_j] == agg_i) {
        outcome[run] = 1;
        return;
      }
      bool nontrivial = false;
      for (NodeId v = 0; v < g.n() && !nontrivial; ++v)
        if (v != node_i && agg[v] == agg_i) nontrivial = true;
      if (nontrivial) {
        // connected caliber-1 aggregate without j: holds a mesh neighbor
        outcome[run] = 2;
        for (NodeId nbr : mesh_nbrs) {
          if (agg[nbr] == agg_i) return;
        }
        outcome[run] = 3;  // partner set without any direct neighbor
        return;
      }
    }
  });

  Figure1Stats st;
  st.runs = cfg.runs;
  for (uint32_t run = 0; run < cfg.runs; ++run) {
    switch (outcome[std::min(run, independent_runs - 1)]) {
      case 1: ++st.with_j; break;
      case 2: ++st.with_mesh_neighbor; break;
      default: ++st.alone; break;
    }
  }
  return st;
}

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::m2sp: return "m2sp";
    case Problem::mla: return "mla";
    case Problem::bisect: return "bisect";
  }
  return "?";
}

namespace {

// cost pair (before postprocessing, after) of one seeded run
std::pair<double, double> run_problem(const WeightedGraph& g, Problem problem,
                                      CouplingMode mode, const CompareConfig& cfg,
                                      uint64_t seed) {
  if (problem == Problem::bisect) {
    BisectionParams bp;
    bp.coarsen.caliber = cfg.caliber;
    bp.coarsen.mode = mode;
    bp.coarsen.relax = cfg.relax;
    bp.coarsen.relax.seed = seed;
    const BisectionResult r = solve_bisection(g, cfg.alpha, bp);
    return {r.cut_before_post, r.cut};
  }
  OrderingParams op;
  op.coarsen.caliber = cfg.caliber;
  op.coarsen.mode = mode;
  op.coarsen.relax = cfg.relax;
  op.coarsen.relax.seed = seed;
  const int p = problem == Problem::mla ? 1 : 2;
  const OrderingResult r = solve_ordering(g, p, op);
  return {r.cost_before_post, r.cost_after_post};
}

}  // namespace

ComparisonRow bench_compare_one(const NamedGraph& ng, const CompareConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be at least 1");
  struct Pair {
    double before, after;
  };
  std::vector<Pair> classical(cfg.runs), challenger(cfg.runs);
  // 2*runs independent executions, parallelized together
  parallel_runs(2 * cfg.runs, cfg.threads, [&](uint32_t t) {
    const uint32_t run = t / 2;
    const bool is_classical = (t % 2) == 0;
    const uint64_t seed = mix_seed(cfg.seed, run);
    const auto [before, after] =
        run_problem(ng.graph, cfg.problem,
                    is_classical ? CouplingMode::classical : cfg.challenger, cfg,
                    seed);
    (is_classical ? classical : challenger)[run] = {before, after};
  });

  double cb = 0, ca = 0, rb = 0, ra = 0;
  for (uint32_t run = 0; run < cfg.runs; ++run) {
    cb += classical[run].before;
    ca += classical[run].after;
    rb += challenger[run].before;
    ra += challenger[run].after;
  }
  ComparisonRow row;
  row.graph = ng.name;
  row.problem = cfg.problem;
  row.caliber = cfg.caliber;
  row.runs = cfg.runs;
  row.ratio_before = cb / rb;
  row.ratio_after = ca / ra;
  return row;
}

std::vector<ComparisonRow> bench_compare(const std::vector<NamedGraph>& graphs,
                                         const CompareConfig& cfg) {
  std::vector<ComparisonRow> rows;
  rows.reserve(graphs.size());
  for (const NamedGraph& g : graphs) rows.push_back(bench_compare_one(g, cfg));
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "graph,problem,caliber,ratio_before,ratio_after,runs\n";
  for (const ComparisonRow& r : rows)
    out << r.graph << ',' << problem_name(r.problem) << ',' << r.caliber << ','
        << csv_number(r.ratio_before) << ',' << csv_number(r.ratio_after) << ','
        << r.runs << '\n';
}

}  // namespace algc
