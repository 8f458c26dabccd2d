#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qjump/errors.hpp"
#include "qjump/harness.hpp"
#include "qjump/rng.hpp"

namespace fs = std::filesystem;
using namespace qjump;

namespace {

std::string fmt(double v) { return format_double(v); }

void write_file(const std::string& path, const std::string& content) {
  if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void print_matrix(std::ostream& os, const std::string& name, const Eigen::MatrixXcd& m) {
  os << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << " " << fmt(m(i, j).real()) << (m(i, j).imag() < 0 ? "-" : "+")
         << fmt(std::abs(m(i, j).imag())) << "i";
    }
    os << "\n";
  }
}

int run_landscape(const std::string& graph_path, int depth, int grid, const std::string& out) {
  const Graph g = load_graph(graph_path);
  const DiagonalHamiltonian h = maxcut_hamiltonian(g);
  const LandscapeTable table = landscape(h, depth, grid);
  std::ostringstream os;
  write_landscape(os, table,
                  {"instance: file:" + graph_path + " n=" + std::to_string(g.n_vertices) +
                       " m=" + std::to_string(g.edges.size()) +
                       " total_weight=" + fmt(g.total_weight()),
                   "depth: " + std::to_string(depth), "grid: " + std::to_string(grid),
                   "columns: gamma beta energy"});
  write_file(out, os.str());
  std::cout << "landscape written to " << out << "\n";
  return 0;
}

int run_optimize(const std::string& graph_path, int depth, std::uint64_t seed, int budget,
                 int pool_size, const std::string& out) {
  RunConfig config;
  config.instance.path = graph_path;
  config.depth = depth;
  config.master_seed = seed;
  config.jump_budget = budget;
  config.pool.size = pool_size;
  const RunReport report = run_jump_enhanced(config);
  write_file(out, report_to_json(report));
  std::cout << "final_energy=" << fmt(report.final_energy)
            << " ground_energy=" << fmt(report.ground_energy)
            << " approximation_ratio=" << fmt(report.approximation_ratio)
            << " jumps=" << report.jumps.size() << "\n";
  std::cout << "report written to " << out << "\n";
  return 0;
}

int run_jump_demo(const std::string& graph_path, int pool_size, int y_sweeps, int depth,
                  std::uint64_t seed) {
  const Graph g = load_graph(graph_path);
  const DiagonalHamiltonian h = maxcut_hamiltonian(g);

  // Generic reference state: the ansatz at seeded random angles.
  std::mt19937_64 rng(derive_seed(seed, 0));
  QaoaParams params;
  params.gammas = Eigen::VectorXd(depth);
  params.betas = Eigen::VectorXd(depth);
  for (int k = 0; k < depth; ++k) params.gammas[k] = uniform_double(rng, 0.0, 3.141592653589793);
  for (int k = 0; k < depth; ++k) params.betas[k] = uniform_double(rng, 0.0, 3.141592653589793);
  const State phi = qaoa_state(h, params);

  PoolConfig pool_config;
  pool_config.size = pool_size;
  pool_config.y_sweeps = y_sweeps;
  const JumpPool pool = build_pool(pool_config, h, derive_seed(seed, 1));
  const MomentPair moments = moment_matrices(phi, pool, h);
  const GepSolution sol = solve_gep(moments);
  const JumpResult jump = apply_jump(phi, pool, sol.alpha, h);

  std::ostream& os = std::cout;
  os << "instance: file:" << graph_path << "\n";
  os << "n_qubits: " << h.n_qubits << "\n";
  os << "pool_size: " << pool.size() << "\n";
  os << "energy_before: " << fmt(expectation_diagonal(phi, h)) << "\n";
  print_matrix(os, "E", moments.overlap);
  print_matrix(os, "H", moments.hamiltonian);
  os << "lambda_opt: " << fmt(sol.lambda_opt) << "\n";
  os << "effective_rank: " << sol.effective_rank << "\n";
  os << "alpha:";
  for (Eigen::Index i = 0; i < sol.alpha.size(); ++i) {
    os << " " << fmt(sol.alpha[i].real()) << (sol.alpha[i].imag() < 0 ? "-" : "+")
       << fmt(std::abs(sol.alpha[i].imag())) << "i";
  }
  os << "\n";
  os << "residual_norm: " << fmt(sol.residual_norm) << "\n";
  os << "jump_energy: " << fmt(jump.energy) << "\n";
  os << "p_succ_root: " << fmt(sol.p_succ_root) << "\n";
  os << "p_succ_naive: " << fmt(sol.p_succ_naive) << "\n";
  for (const LcuEncoding enc : {LcuEncoding::Root, LcuEncoding::Naive}) {
    const LcuReport rep = lcu_verify(phi, pool, sol.alpha, enc);
    os << "lcu_" << to_string(enc) << ": fidelity=" << fmt(rep.fidelity)
       << " p_measured=" << fmt(rep.p_succ_measured)
       << " p_closed_form=" << fmt(rep.p_succ_closed_form)
       << " ancilla_qubits=" << rep.ancilla_qubits << " ok=" << (rep.ok() ? 1 : 0) << "\n";
  }
  return 0;
}

int run_benchmark_cmd(const std::string& config_path, const std::string& out_dir) {
  const BenchmarkConfig config = parse_benchmark_config(read_file(config_path));
  const BenchmarkTable table = run_benchmark(config);

  fs::create_directories(out_dir);
  {
    std::ostringstream os;
    write_benchmark_csv(os, table);
    write_file((fs::path(out_dir) / "rows.csv").string(), os.str());
  }
  {
    std::ostringstream os;
    write_aggregates_csv(os, table);
    write_file((fs::path(out_dir) / "aggregates.csv").string(), os.str());
  }
  // Per-cell reports for auditability.
  fs::create_directories(fs::path(out_dir) / "reports");
  std::size_t instance_index = 0;
  for (const auto& instance : config.instances) {
    for (const std::uint64_t seed : config.seeds) {
      for (const bool jump_mode : {false, true}) {
        RunConfig cell = config.base;
        cell.instance = instance;
        cell.master_seed = seed;
        if (!jump_mode) cell.jump_budget = 0;
        const std::string name = "instance" + std::to_string(instance_index) + "_seed" +
                                 std::to_string(seed) + (jump_mode ? "_jump" : "_baseline") +
                                 ".json";
        try {
          const RunReport rep = run_jump_enhanced(cell);
          write_file((fs::path(out_dir) / "reports" / name).string(), report_to_json(rep));
        } catch (const std::exception& e) {
          write_file((fs::path(out_dir) / "reports" / name).string(),
                     std::string("{\"error\": \"") + e.what() + "\"}\n");
        }
      }
    }
    ++instance_index;
  }
  std::cout << "benchmark written to " << out_dir << " (" << table.rows.size() << " rows)\n";
  return 0;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const CapacityError*>(&e)) return "capacity";
  if (dynamic_cast<const ShapeError*>(&e)) return "shape";
  if (dynamic_cast<const DescriptorError*>(&e)) return "descriptor";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const DegenerateMetricError*>(&e)) return "degenerate_metric";
  if (dynamic_cast<const DegenerateJumpError*>(&e)) return "degenerate_jump";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  return "error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA statevector harness with conic jump extensions"};
  app.require_subcommand(1);

  std::string graph_path, out_path, config_path, out_dir;
  int depth = 1, grid = 64, pool_size = 4, y_sweeps = 0, jump_budget = 0;
  std::uint64_t seed = 1;

  auto* land = app.add_subcommand("landscape", "Energy on a (gamma, beta) grid over [0, pi]^2");
  land->add_option("--graph", graph_path, "graph file")->required();
  land->add_option("--p", depth, "QAOA depth (shared gamma/beta across layers)")->required();
  land->add_option("--grid", grid, "lattice resolution per axis");
  land->add_option("--out", out_path, "output table file")->required();

  auto* opt = app.add_subcommand("optimize", "Run the (jump-enabled) optimizer on an instance");
  opt->add_option("--graph", graph_path, "graph file")->required();
  opt->add_option("--p", depth, "QAOA depth")->required();
  opt->add_option("--seed", seed, "master seed");
  opt->add_option("--jump-budget", jump_budget, "max jumps (default 0: plain baseline)");
  opt->add_option("--pool-size", pool_size, "jump pool size");
  opt->add_option("--out", out_path, "output report JSON")->required();

  auto* demo = app.add_subcommand("jump-demo", "Moment matrices, GEP solution and LCU check");
  demo->add_option("--graph", graph_path, "graph file")->required();
  demo->add_option("--pool-size", pool_size, "jump pool size")->required();
  demo->add_option("--y-sweeps", y_sweeps, "Y-rotation sweep entries in the pool");
  demo->add_option("--p", depth, "QAOA depth of the reference state");
  demo->add_option("--seed", seed, "seed for reference angles and the pool");

  auto* bench = app.add_subcommand("benchmark", "Paired baseline/jump sweep from a JSON config");
  bench->add_option("--config", config_path, "benchmark config JSON")->required();
  bench->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (land->parsed()) return run_landscape(graph_path, depth, grid, out_path);
    if (opt->parsed()) return run_optimize(graph_path, depth, seed, jump_budget, pool_size, out_path);
    if (demo->parsed()) return run_jump_demo(graph_path, pool_size, y_sweeps, depth, seed);
    if (bench->parsed()) return run_benchmark_cmd(config_path, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << error_kind(e) << "\", \"message\": \"" << e.what()
              << "\"}\n";
    return 1;
  }
  return 0;
}
