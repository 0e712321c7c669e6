// algc command line: graph conversion, algebraic distances, coarsening,
// multilevel solvers and the mesh/comparison benches.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algc/bench.hpp"
#include "algc/coarsen.hpp"
#include "algc/corpus.hpp"
#include "algc/distance.hpp"
#include "algc/graph_io.hpp"
#include "algc/kernels.hpp"
#include "algc/ordering.hpp"
#include "algc/partition.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalOpts {
  uint64_t seed = 42;
  uint32_t threads = 1;
  std::string format = "auto";
  std::string kernel = "auto";
};

std::optional<algc::GraphFormat> pick_format(const GlobalOpts& g) {
  if (g.format == "auto") return std::nullopt;
  auto f = algc::format_from_name(g.format);
  if (!f) throw CLI::ValidationError("--format", "unknown format '" + g.format + "'");
  return f;
}

algc::WeightedGraph load_graph(const std::string& path, const GlobalOpts& g) {
  algc::ParseResult r = algc::parse_graph_file(path, pick_format(g));
  if (r.stats.merged_edges || r.stats.dropped_self_loops)
    std::cerr << path << ": merged " << r.stats.merged_edges
              << " duplicate edge(s), dropped " << r.stats.dropped_self_loops
              << " self-loop(s)\n";
  return std::move(r.graph);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

algc::Normalize parse_normalize(const std::string& s) {
  if (s == "none") return algc::Normalize::none;
  if (s == "zero-mean-unit-norm" || s == "zmun")
    return algc::Normalize::zero_mean_unit_norm;
  throw CLI::ValidationError("--normalize", "unknown normalization '" + s + "'");
}

algc::DistanceKind parse_kind(const std::string& s) {
  if (s == "max-norm") return algc::DistanceKind::max_norm;
  if (s == "sum-squares") return algc::DistanceKind::sum_squares;
  throw CLI::ValidationError("--kind", "unknown distance kind '" + s + "'");
}

algc::CouplingMode parse_mode(const std::string& s) {
  if (s == "relaxation") return algc::CouplingMode::relaxation;
  if (s == "classical") return algc::CouplingMode::classical;
  if (s == "algebraic-only") return algc::CouplingMode::algebraic_only;
  throw CLI::ValidationError("--mode", "unknown coupling mode '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic-distance multilevel graph toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts global;
  app.add_option("--seed", global.seed, "master RNG seed")->capture_default_str();
  app.add_option("--threads", global.threads,
                 "benchmark worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_option("--format", global.format,
                 "graph input format: auto|edge-list|metis|matrix-market")
      ->capture_default_str();
  app.add_option("--kernel", global.kernel,
                 "kernel backend: auto|scalar|avx2|neon")
      ->capture_default_str();

  // ---- convert ----
  auto* convert = app.add_subcommand("convert", "convert a graph between formats");
  std::string conv_in, conv_out, conv_out_format = "auto";
  convert->add_option("input", conv_in)->required();
  convert->add_option("output", conv_out)->required();
  convert->add_option("--out-format", conv_out_format,
                      "output format (default: by extension)");

  // ---- algdist ----
  auto* algdist = app.add_subcommand(
      "algdist", "relax test vectors and emit the per-edge coupling table");
  std::string ad_graph, ad_out, ad_tvs_out;
  uint32_t ad_K = 20, ad_sweeps = 10;
  double ad_omega = 0.5;
  std::string ad_normalize = "zero-mean-unit-norm", ad_kind = "max-norm";
  algdist->add_option("graph", ad_graph)->required();
  algdist->add_option("-o,--output", ad_out, "coupling CSV (default stdout)");
  algdist->add_option("--tvs", ad_tvs_out, "also dump test vectors as CSV");
  algdist->add_option("--K", ad_K, "test vector count")->capture_default_str();
  algdist->add_option("--sweeps", ad_sweeps, "relaxation sweeps")
      ->capture_default_str();
  algdist->add_option("--omega", ad_omega, "damping")->capture_default_str();
  algdist->add_option("--normalize", ad_normalize, "none|zero-mean-unit-norm")
      ->capture_default_str();
  algdist->add_option("--kind", ad_kind, "max-norm|sum-squares")
      ->capture_default_str();

  // ---- coarsen ----
  auto* coarsen = app.add_subcommand("coarsen", "build and dump a hierarchy");
  std::string co_graph, co_prefix = "hierarchy", co_mode = "relaxation",
              co_kind = "max-norm";
  uint32_t co_caliber = 1, co_levels = 64, co_coarsest = 8, co_K = 20,
           co_sweeps = 10;
  double co_q = 0.5, co_nu = 2.0, co_beta = 0.5;
  bool co_explain = false;
  coarsen->add_option("graph", co_graph)->required();
  coarsen->add_option("-o,--output", co_prefix, "output file prefix")
      ->capture_default_str();
  coarsen->add_option("--mode", co_mode, "relaxation|classical|algebraic-only")
      ->capture_default_str();
  coarsen->add_option("--caliber", co_caliber)->capture_default_str();
  coarsen->add_option("--levels", co_levels, "level cap")->capture_default_str();
  coarsen->add_option("--coarsest", co_coarsest, "stop at this size")
      ->capture_default_str();
  coarsen->add_option("--K", co_K)->capture_default_str();
  coarsen->add_option("--sweeps", co_sweeps)->capture_default_str();
  coarsen->add_option("--strength-q", co_q, "coupling-to-seeds threshold")
      ->capture_default_str();
  coarsen->add_option("--volume-nu", co_nu, "future-volume pre-seed factor")
      ->capture_default_str();
  coarsen->add_option("--filter-beta", co_beta, "coarse-neighborhood filter")
      ->capture_default_str();
  coarsen->add_option("--kind", co_kind)->capture_default_str();
  coarsen->add_flag("--explain", co_explain, "log level stats and stop reason");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "multilevel solver");
  std::string so_problem, so_graph, so_out, so_mode = "relaxation";
  uint32_t so_caliber = 1, so_K = 20, so_sweeps = 10;
  double so_alpha = 0.03;
  bool so_no_post = false;
  solve->add_option("problem", so_problem, "m2sp|mla|bisect")->required();
  solve->add_option("graph", so_graph)->required();
  solve->add_option("-o,--output", so_out, "solution file (default stdout)");
  solve->add_option("--caliber", so_caliber)->capture_default_str();
  solve->add_option("--mode", so_mode)->capture_default_str();
  solve->add_option("--alpha", so_alpha, "bisection imbalance factor")
      ->capture_default_str();
  solve->add_option("--K", so_K)->capture_default_str();
  solve->add_option("--sweeps", so_sweeps)->capture_default_str();
  solve->add_flag("--no-post", so_no_post, "skip finest-level refinement");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "mesh statistics and coarsening comparisons");
  bench->require_subcommand(1);

  auto add_table_opts = [&](CLI::App* t, algc::TableConfig& cfg,
                            std::string& out, std::string& kind,
                            std::string& normalize) {
    t->add_option("-o,--output", out, "CSV output (default stdout)");
    t->add_option("--runs", cfg.runs)->capture_default_str();
    t->add_option("--rows", cfg.mesh.rows)->capture_default_str();
    t->add_option("--cols", cfg.mesh.cols)->capture_default_str();
    t->add_option("--ks", cfg.K_values, "K values")->delimiter(',');
    t->add_option("--rs", cfg.r_values, "sweep counts")->delimiter(',');
    t->add_option("--ws", cfg.wij_values, "extra-edge weights")->delimiter(',');
    t->add_option("--kind", kind)->capture_default_str();
    t->add_option("--normalize", normalize)->capture_default_str();
  };
  algc::TableConfig t1_cfg, t2_cfg;
  std::string t1_out, t1_kind = "max-norm", t1_norm = "none";
  std::string t2_out, t2_kind = "max-norm", t2_norm = "none";
  auto* table1 = bench->add_subcommand("table1", "ln(d_ij/d_i*) mesh statistics");
  add_table_opts(table1, t1_cfg, t1_out, t1_kind, t1_norm);
  auto* table2 = bench->add_subcommand("table2", "ln(d_qi/d_q*) mesh statistics");
  add_table_opts(table2, t2_cfg, t2_out, t2_kind, t2_norm);

  auto* fig1 = bench->add_subcommand(
      "figure1", "where does the extra-edge endpoint aggregate?");
  algc::Figure1Config f1_cfg;
  std::string f1_mode = "relaxation";
  fig1->add_option("--wij", f1_cfg.wij, "extra edge weight")->capture_default_str();
  fig1->add_option("--mode", f1_mode)->capture_default_str();
  fig1->add_option("--runs", f1_cfg.runs)->capture_default_str();
  fig1->add_option("--rows", f1_cfg.mesh.rows)->capture_default_str();
  fig1->add_option("--cols", f1_cfg.mesh.cols)->capture_default_str();
  fig1->add_option("--K", f1_cfg.coarsen.relax.K)->capture_default_str();
  fig1->add_option("--sweeps", f1_cfg.coarsen.relax.sweeps)->capture_default_str();

  auto* compare = bench->add_subcommand(
      "compare", "classical vs relaxation-based coarsening cost ratios");
  std::vector<std::string> cmp_files;
  algc::CompareConfig cmp_cfg;
  std::string cmp_problem = "m2sp", cmp_out, cmp_challenger = "relaxation";
  std::vector<uint32_t> cmp_calibers{1};
  bool cmp_bundled = false;
  compare->add_option("graphs", cmp_files, "graph files");
  compare->add_flag("--bundled", cmp_bundled, "use the bundled corpus");
  compare->add_option("--problem", cmp_problem, "m2sp|mla|bisect")
      ->capture_default_str();
  compare->add_option("--caliber", cmp_calibers, "calibers to run")
      ->delimiter(',');
  compare->add_option("--runs", cmp_cfg.runs)->capture_default_str();
  compare->add_option("--challenger", cmp_challenger,
                      "relaxation|algebraic-only")
      ->capture_default_str();
  compare->add_option("--alpha", cmp_cfg.alpha)->capture_default_str();
  compare->add_option("--K", cmp_cfg.relax.K)->capture_default_str();
  compare->add_option("--sweeps", cmp_cfg.relax.sweeps)->capture_default_str();
  compare->add_option("-o,--output", cmp_out, "CSV output (default stdout)");

  auto* corpus = bench->add_subcommand("corpus", "write the bundled corpus");
  std::string corpus_dir;
  corpus->add_option("--out", corpus_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!algc::kernels::set_backend(global.kernel))
      throw std::runtime_error("kernel backend '" + global.kernel +
                               "' is unknown or unavailable");

    if (*convert) {
      algc::WeightedGraph g = load_graph(conv_in, global);
      std::optional<algc::GraphFormat> of;
      if (conv_out_format != "auto") {
        of = algc::format_from_name(conv_out_format);
        if (!of)
          throw std::runtime_error("unknown output format '" + conv_out_format + "'");
      }
      algc::write_graph_file(conv_out, g, of);
      std::cerr << "wrote " << conv_out << " (" << g.n() << " nodes, " << g.m()
                << " edges)\n";
      return kExitOk;
    }

    if (*algdist) {
      algc::WeightedGraph g = load_graph(ad_graph, global);
      algc::RelaxParams rp;
      rp.K = ad_K;
      rp.sweeps = ad_sweeps;
      rp.omega = ad_omega;
      rp.seed = global.seed;
      rp.normalize = parse_normalize(ad_normalize);
      const algc::TestVectorSet tv = algc::relax_test_vectors(g, rp);
      const algc::CouplingTable table =
          algc::build_coupling_table(g, tv, parse_kind(ad_kind));
      if (!ad_tvs_out.empty()) {
        std::ofstream tvs(ad_tvs_out);
        if (!tvs) throw std::runtime_error("cannot open '" + ad_tvs_out + "'");
        tv.write_csv(tvs);
      }
      std::ofstream file;
      table.write_csv(open_output(file, ad_out), g);
      return kExitOk;
    }

    if (*coarsen) {
      algc::WeightedGraph g = load_graph(co_graph, global);
      algc::CoarsenParams cp;
      cp.mode = parse_mode(co_mode);
      cp.caliber = co_caliber;
      cp.max_levels = co_levels;
      cp.coarsest_size = co_coarsest;
      cp.strength_threshold = co_q;
      cp.volume_factor = co_nu;
      cp.coupling_filter = co_beta;
      cp.distance_kind = parse_kind(co_kind);
      cp.relax.K = co_K;
      cp.relax.sweeps = co_sweeps;
      cp.relax.seed = global.seed;
      const algc::Hierarchy h = algc::build_hierarchy(g, cp);
      for (size_t lvl = 0; lvl < h.levels(); ++lvl) {
        // METIS keeps the aggregated volumes of the coarse levels
        const std::string path = co_prefix + ".L" + std::to_string(lvl) + ".graph";
        algc::write_graph_file(path, h.graphs[lvl], algc::GraphFormat::metis);
        if (lvl < h.maps.size()) {
          std::ofstream pf(co_prefix + ".P" + std::to_string(lvl) + ".csv");
          h.maps[lvl].write_csv(pf);
        }
      }
      if (co_explain) {
        for (size_t lvl = 0; lvl < h.maps.size(); ++lvl)
          std::cerr << "level " << lvl << ": " << h.graphs[lvl].n() << " -> "
                    << h.graphs[lvl + 1].n() << " nodes, seeds "
                    << h.stats[lvl].seeds << ", rescued " << h.stats[lvl].rescued
                    << "\n";
        std::cerr << "stop: " << algc::stop_reason_name(h.stop) << " at "
                  << h.coarsest().n() << " nodes\n";
      }
      return kExitOk;
    }

    if (*solve) {
      algc::WeightedGraph g = load_graph(so_graph, global);
      std::ofstream file;
      std::ostream& out = open_output(file, so_out);
      if (so_problem == "bisect") {
        algc::BisectionParams bp;
        bp.coarsen.caliber = so_caliber;
        bp.coarsen.mode = parse_mode(so_mode);
        bp.coarsen.relax.K = so_K;
        bp.coarsen.relax.sweeps = so_sweeps;
        bp.coarsen.relax.seed = global.seed;
        bp.apply_post = !so_no_post;
        const algc::BisectionResult r = algc::solve_bisection(g, so_alpha, bp);
        algc::write_bipartition(out, r.partition, r.cut);
        std::cerr << "cut_before_post " << r.cut_before_post << "\ncut "
                  << r.cut << "\n";
      } else if (so_problem == "m2sp" || so_problem == "mla") {
        algc::OrderingParams op;
        op.coarsen.caliber = so_caliber;
        op.coarsen.mode = parse_mode(so_mode);
        op.coarsen.relax.K = so_K;
        op.coarsen.relax.sweeps = so_sweeps;
        op.coarsen.relax.seed = global.seed;
        op.apply_post = !so_no_post;
        const int p = so_problem == "mla" ? 1 : 2;
        const algc::OrderingResult r = algc::solve_ordering(g, p, op);
        algc::write_ordering(out, r.arrangement, r.cost_after_post);
        std::cerr << "cost_before_post " << r.cost_before_post
                  << "\ncost_after_post " << r.cost_after_post << "\n";
      } else {
        std::cerr << "unknown problem '" << so_problem << "'\n";
        return kExitUsage;
      }
      return kExitOk;
    }

    if (*table1 || *table2) {
      const bool is_t1 = static_cast<bool>(*table1);
      algc::TableConfig& cfg = is_t1 ? t1_cfg : t2_cfg;
      cfg.seed = global.seed;
      cfg.threads = global.threads;
      cfg.kind = parse_kind(is_t1 ? t1_kind : t2_kind);
      cfg.normalize = parse_normalize(is_t1 ? t1_norm : t2_norm);
      const std::vector<algc::TableRow> rows =
          is_t1 ? algc::bench_table1(cfg) : algc::bench_table2(cfg);
      std::ofstream file;
      std::ostream& out = open_output(file, is_t1 ? t1_out : t2_out);
      if (is_t1) algc::write_table1_csv(out, rows);
      else algc::write_table2_csv(out, rows);
      return kExitOk;
    }

    if (*fig1) {
      f1_cfg.mode = parse_mode(f1_mode);
      f1_cfg.seed = global.seed;
      f1_cfg.threads = global.threads;
      const algc::Figure1Stats st = algc::bench_figure1(f1_cfg);
      std::cout << "runs,with_j,with_mesh_neighbor,alone\n"
                << st.runs << ',' << st.with_j << ',' << st.with_mesh_neighbor
                << ',' << st.alone << '\n';
      return kExitOk;
    }

    if (*compare) {
      cmp_cfg.seed = global.seed;
      cmp_cfg.threads = global.threads;
      cmp_cfg.challenger = parse_mode(cmp_challenger);
      if (cmp_problem == "m2sp") cmp_cfg.problem = algc::Problem::m2sp;
      else if (cmp_problem == "mla") cmp_cfg.problem = algc::Problem::mla;
      else if (cmp_problem == "bisect") cmp_cfg.problem = algc::Problem::bisect;
      else throw std::runtime_error("unknown problem '" + cmp_problem + "'");

      std::vector<algc::NamedGraph> graphs;
      if (cmp_bundled) {
        graphs = algc::default_corpus(cmp_cfg.seed);
      }
      for (const std::string& path : cmp_files) {
        algc::NamedGraph ng;
        auto slash = path.find_last_of('/');
        ng.name = slash == std::string::npos ? path : path.substr(slash + 1);
        ng.graph = load_graph(path, global);
        graphs.push_back(std::move(ng));
      }
      if (graphs.empty())
        throw std::runtime_error("no graphs given (pass files or --bundled)");

      std::vector<algc::ComparisonRow> rows;
      for (uint32_t caliber : cmp_calibers) {
        algc::CompareConfig cfg = cmp_cfg;
        cfg.caliber = caliber;
        for (const algc::NamedGraph& ng : graphs) {
          try {
            rows.push_back(algc::bench_compare_one(ng, cfg));
          } catch (const std::exception& e) {
            std::cerr << ng.name << ": failed: " << e.what() << "\n";
          }
        }
      }
      std::ofstream file;
      algc::write_compare_csv(open_output(file, cmp_out), rows);
      return kExitOk;
    }

    if (*corpus) {
      algc::write_corpus(corpus_dir, global.seed);
      std::cerr << "corpus written to " << corpus_dir << "\n";
      return kExitOk;
    }
  } catch (const algc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
