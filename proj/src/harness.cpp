#include "qjump/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

using json = nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

void sort_edges(Graph& g) {
  std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
}

Graph ring_graph(int n) {
  if (n < 3) throw ConfigError("ring graph needs n >= 3");
  Graph g;
  g.n_vertices = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  g.edges.push_back({0, n - 1, 1.0});
  sort_edges(g);
  return g;
}

Graph complete_graph(int n) {
  if (n < 2) throw ConfigError("complete graph needs n >= 2");
  Graph g;
  g.n_vertices = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, 1.0});
  return g;
}

Graph erdos_renyi_graph(int n, double p, std::uint64_t seed) {
  if (n < 2) throw ConfigError("Erdos-Renyi graph needs n >= 2");
  if (p < 0.0 || p > 1.0) throw ConfigError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  Graph g;
  g.n_vertices = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform_double(rng) < p) g.edges.push_back({i, j, 1.0});
  return g;
}

Graph random_regular_graph(int n, int d, std::uint64_t seed) {
  if (d < 1 || d >= n) throw ConfigError("regular degree must satisfy 1 <= d < n");
  if ((n * d) % 2 != 0) throw ConfigError("n*d must be even for a d-regular graph");
  std::mt19937_64 rng(seed);
  // Pairing model with rejection of self-loops and parallel edges.
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;

  for (int attempt = 0; attempt < 500; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      std::swap(stubs[i], stubs[uniform_index(rng, i + 1)]);
    }
    std::set<std::pair<int, int>> seen;
    bool valid = true;
    Graph g;
    g.n_vertices = n;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int u = stubs[k], v = stubs[k + 1];
      if (u == v) { valid = false; break; }
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) { valid = false; break; }
      g.edges.push_back({u, v, 1.0});
    }
    if (valid) {
      sort_edges(g);
      return g;
    }
  }
  throw ConfigError("failed to sample a simple d-regular graph (try another seed)");
}

}  // namespace

Graph generate_graph(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::Ring: return ring_graph(spec.n);
    case GeneratorSpec::Kind::Complete: return complete_graph(spec.n);
    case GeneratorSpec::Kind::ErdosRenyi:
      return erdos_renyi_graph(spec.n, spec.edge_probability, spec.seed);
    case GeneratorSpec::Kind::RandomRegular:
      return random_regular_graph(spec.n, spec.degree, spec.seed);
  }
  throw ConfigError("unknown generator kind");
}

Graph InstanceSource::load() const {
  if (path.has_value() == generator.has_value()) {
    throw ConfigError("instance source needs exactly one of {path, generator}");
  }
  return path ? load_graph(*path) : generate_graph(*generator);
}

std::string InstanceSource::describe() const {
  if (path) return "file:" + *path;
  if (!generator) return "unset";
  const auto& g = *generator;
  std::ostringstream os;
  switch (g.kind) {
    case GeneratorSpec::Kind::Ring: os << "ring(n=" << g.n << ")"; break;
    case GeneratorSpec::Kind::Complete: os << "complete(n=" << g.n << ")"; break;
    case GeneratorSpec::Kind::ErdosRenyi:
      os << "erdos_renyi(n=" << g.n << " p=" << g.edge_probability << " seed=" << g.seed << ")";
      break;
    case GeneratorSpec::Kind::RandomRegular:
      os << "random_regular(n=" << g.n << " d=" << g.degree << " seed=" << g.seed << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Plateau detection and the jump-enhanced loop

bool detect_plateau(const OptTrace& trace, double grad_tol, int window) {
  if (window < 1) throw ConfigError("plateau window must be >= 1");
  if (trace.iterates.size() < static_cast<std::size_t>(window)) return false;
  const std::size_t start = trace.iterates.size() - static_cast<std::size_t>(window);
  for (std::size_t i = start; i < trace.iterates.size(); ++i) {
    if (!(trace.iterates[i].grad_inf_norm < grad_tol)) return false;
  }
  return true;
}

namespace {

// Seed streams derived from the master seed: 0 → initial angles, 1 → final
// sampling, 2+2j / 3+2j → pool and restart angles of jump j.
QaoaParams random_params(int depth, double range, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QaoaParams params;
  params.gammas = Eigen::VectorXd(depth);
  params.betas = Eigen::VectorXd(depth);
  for (int k = 0; k < depth; ++k) params.gammas[k] = uniform_double(rng, 0.0, range);
  for (int k = 0; k < depth; ++k) params.betas[k] = uniform_double(rng, 0.0, range);
  return params;
}

struct RunOutcome {
  RunReport report;
  State final_state;
};

RunOutcome run_impl(const RunConfig& config) {
  if (config.depth < 1) throw ConfigError("depth must be >= 1");
  if (config.jump_budget < 0) throw ConfigError("jump budget must be >= 0");
  if (config.shots < 1) throw ConfigError("shots must be >= 1");
  if (!(config.plateau.grad_tol > 0.0)) throw ConfigError("plateau grad_tol must be positive");
  if (config.plateau.window < 1) throw ConfigError("plateau window must be >= 1");

  const Graph g = config.instance.load();
  const DiagonalHamiltonian h = maxcut_hamiltonian(g);
  const GroundTruth ground = brute_force_ground(h);

  OptimizerConfig opt = config.optimizer;
  opt.plateau_grad_tol = config.plateau.grad_tol;
  opt.plateau_window = config.plateau.window;

  RunOutcome out;
  RunReport& report = out.report;
  report.instance = config.instance.describe();
  report.n_qubits = h.n_qubits;
  report.depth = config.depth;
  report.master_seed = config.master_seed;
  report.ground_energy = ground.energy;

  QaoaParams params =
      random_params(config.depth, config.init_angle_range, derive_seed(config.master_seed, 0));
  std::vector<State> segment_inputs;  // element k = input state of segment k
  segment_inputs.push_back(uniform_superposition(h.n_qubits));

  int jumps_done = 0;
  double best_energy = std::numeric_limits<double>::infinity();
  while (true) {
    const State& input = segment_inputs.back();
    OptTrace trace = optimize(h, params, opt, &input);
    const int segment = static_cast<int>(report.segments.size());
    report.total_iterations += static_cast<int>(trace.iterates.size());
    if (trace.reason == StopReason::PlateauDetected) report.plateau_triggered = true;
    if (trace.best().energy < best_energy) {
      best_energy = trace.best().energy;
      report.final_segment = segment;
      report.final_iterate = trace.best_index;
    }
    const bool jump_now =
        trace.reason == StopReason::PlateauDetected && jumps_done < config.jump_budget;
    const QaoaParams at_stop = trace.iterates.back().params;
    const double energy_at_stop = trace.iterates.back().energy;
    report.segments.push_back({std::move(trace)});
    if (!jump_now) break;

    const State phi = qaoa_state(h, at_stop, input);
    const JumpPool pool =
        build_pool(config.pool, h, derive_seed(config.master_seed, 2 + 2 * jumps_done));
    const MomentPair moments = moment_matrices(phi, pool, h);
    const GepSolution sol = solve_gep(moments);
    const JumpResult jump = apply_jump(phi, pool, sol.alpha, h);

    report.jumps.push_back(
        {report.total_iterations, energy_at_stop, jump.energy, sol.alpha.lpNorm<1>(), sol});
    segment_inputs.push_back(jump.state);
    params = random_params(config.depth, config.restart_angle_range,
                           derive_seed(config.master_seed, 3 + 2 * jumps_done));
    ++jumps_done;
  }

  const auto& final_segment = report.segments[static_cast<std::size_t>(report.final_segment)];
  const OptIterate& final_iterate = final_segment.trace.iterates[report.final_iterate];
  out.final_state = qaoa_state(h, final_iterate.params,
                               segment_inputs[static_cast<std::size_t>(report.final_segment)]);
  report.final_energy = final_iterate.energy;
  report.approximation_ratio =
      ground.energy == 0.0 ? 1.0 : report.final_energy / ground.energy;

  double p_exact = 0.0;
  for (std::uint64_t x : ground.optimal_bitstrings) {
    p_exact += std::norm(out.final_state.amplitudes[static_cast<std::int64_t>(x)]);
  }
  report.optimal_probability_exact = p_exact;

  const auto samples =
      sample_bitstrings(out.final_state, config.shots, derive_seed(config.master_seed, 1));
  std::size_t hits = 0;
  for (std::uint64_t s : samples) {
    if (std::binary_search(ground.optimal_bitstrings.begin(), ground.optimal_bitstrings.end(), s))
      ++hits;
  }
  report.optimal_probability_sampled =
      static_cast<double>(hits) / static_cast<double>(samples.size());
  return out;
}

}  // namespace

RunReport run_jump_enhanced(const RunConfig& config) { return run_impl(config).report; }

State reconstruct_final_state(const RunConfig& config, const RunReport& report) {
  RunOutcome out = run_impl(config);
  if (out.report.final_segment != report.final_segment ||
      out.report.final_iterate != report.final_iterate) {
    throw NumericalError("report does not match a deterministic replay of its config");
  }
  return out.final_state;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json trace_to_json(const OptTrace& trace) {
  json iterates = json::array();
  for (const auto& it : trace.iterates) {
    const Eigen::VectorXd flat = it.params.flat();
    iterates.push_back({{"params", std::vector<double>(flat.begin(), flat.end())},
                        {"energy", it.energy},
                        {"grad_inf_norm", it.grad_inf_norm}});
  }
  return {{"reason", to_string(trace.reason)},
          {"best_index", trace.best_index},
          {"iterates", std::move(iterates)}};
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json segments = json::array();
  for (const auto& seg : report.segments) segments.push_back(trace_to_json(seg.trace));
  json jumps = json::array();
  for (const auto& e : report.jumps) {
    std::vector<double> alpha_re, alpha_im;
    for (Eigen::Index i = 0; i < e.solution.alpha.size(); ++i) {
      alpha_re.push_back(e.solution.alpha[i].real());
      alpha_im.push_back(e.solution.alpha[i].imag());
    }
    jumps.push_back({{"iteration", e.iteration},
                     {"energy_before", e.energy_before},
                     {"realized_energy", e.realized_energy},
                     {"alpha_l1", e.alpha_l1},
                     {"gep", {{"lambda_opt", e.solution.lambda_opt},
                              {"alpha_re", alpha_re},
                              {"alpha_im", alpha_im},
                              {"effective_rank", e.solution.effective_rank},
                              {"p_succ_root", e.solution.p_succ_root},
                              {"p_succ_naive", e.solution.p_succ_naive}}}});
  }
  const json j = {{"instance", report.instance},
                  {"n_qubits", report.n_qubits},
                  {"depth", report.depth},
                  {"master_seed", report.master_seed},
                  {"segments", std::move(segments)},
                  {"jumps", std::move(jumps)},
                  {"plateau_triggered", report.plateau_triggered},
                  {"total_iterations", report.total_iterations},
                  {"final_energy", report.final_energy},
                  {"ground_energy", report.ground_energy},
                  {"approximation_ratio", report.approximation_ratio},
                  {"optimal_probability_exact", report.optimal_probability_exact},
                  {"optimal_probability_sampled", report.optimal_probability_sampled},
                  {"final_segment", report.final_segment},
                  {"final_iterate", report.final_iterate}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Benchmark sweep

namespace {

double mean(std::vector<double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::string sanitize_csv(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

}  // namespace

BenchmarkTable run_benchmark(const BenchmarkConfig& config) {
  if (config.instances.empty()) throw ConfigError("benchmark needs at least one instance");
  if (config.seeds.empty()) throw ConfigError("benchmark needs at least one seed");

  BenchmarkTable table;
  for (const auto& instance : config.instances) {
    for (std::uint64_t seed : config.seeds) {
      for (const bool jump_mode : {false, true}) {
        RunConfig cell = config.base;
        cell.instance = instance;
        cell.master_seed = seed;
        if (!jump_mode) cell.jump_budget = 0;

        BenchmarkRow row;
        row.instance = instance.describe();
        row.seed = seed;
        row.mode = jump_mode ? "jump" : "baseline";
        try {
          const RunReport rep = run_jump_enhanced(cell);
          row.final_energy = rep.final_energy;
          row.ground_energy = rep.ground_energy;
          row.approximation_ratio = rep.approximation_ratio;
          row.optimal_probability_exact = rep.optimal_probability_exact;
          row.optimal_probability_sampled = rep.optimal_probability_sampled;
          row.jumps = static_cast<int>(rep.jumps.size());
          row.plateau_triggered = rep.plateau_triggered;
          row.iterations = rep.total_iterations;
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
        }
        table.rows.push_back(std::move(row));
      }
    }
  }

  for (const auto& instance : config.instances) {
    const std::string name = instance.describe();
    for (const char* mode : {"baseline", "jump"}) {
      std::vector<double> ratios, probs, energies;
      for (const auto& row : table.rows) {
        if (row.failed || row.instance != name || row.mode != mode) continue;
        ratios.push_back(row.approximation_ratio);
        probs.push_back(row.optimal_probability_exact);
        energies.push_back(row.final_energy);
      }
      BenchmarkAggregate agg;
      agg.instance = name;
      agg.mode = mode;
      agg.runs = static_cast<int>(ratios.size());
      agg.mean_approximation_ratio = mean(ratios);
      agg.median_approximation_ratio = median(ratios);
      agg.mean_optimal_probability = mean(probs);
      agg.median_optimal_probability = median(probs);
      agg.mean_final_energy = mean(energies);
      agg.median_final_energy = median(energies);
      table.aggregates.push_back(std::move(agg));
    }
  }
  return table;
}

void write_benchmark_csv(std::ostream& os, const BenchmarkTable& table) {
  os << "instance,seed,mode,failed,error,final_energy,ground_energy,approximation_ratio,"
        "optimal_probability_exact,optimal_probability_sampled,jumps,plateau_triggered,"
        "iterations\n";
  for (const auto& r : table.rows) {
    os << sanitize_csv(r.instance) << ',' << r.seed << ',' << r.mode << ','
       << (r.failed ? 1 : 0) << ',' << sanitize_csv(r.error) << ','
       << format_double(r.final_energy) << ',' << format_double(r.ground_energy) << ','
       << format_double(r.approximation_ratio) << ','
       << format_double(r.optimal_probability_exact) << ','
       << format_double(r.optimal_probability_sampled) << ',' << r.jumps << ','
       << (r.plateau_triggered ? 1 : 0) << ',' << r.iterations << '\n';
  }
}

void write_aggregates_csv(std::ostream& os, const BenchmarkTable& table) {
  os << "instance,mode,runs,mean_approximation_ratio,median_approximation_ratio,"
        "mean_optimal_probability,median_optimal_probability,mean_final_energy,"
        "median_final_energy\n";
  for (const auto& a : table.aggregates) {
    os << sanitize_csv(a.instance) << ',' << a.mode << ',' << a.runs << ','
       << format_double(a.mean_approximation_ratio) << ','
       << format_double(a.median_approximation_ratio) << ','
       << format_double(a.mean_optimal_probability) << ','
       << format_double(a.median_optimal_probability) << ','
       << format_double(a.mean_final_energy) << ',' << format_double(a.median_final_energy)
       << '\n';
  }
}

BenchmarkTable parse_benchmark_csv(std::istream& is) {
  BenchmarkTable table;
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "empty CSV");
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 13) {
      throw ParseError(line_no, "expected 13 CSV fields, found " + std::to_string(fields.size()));
    }
    BenchmarkRow r;
    r.instance = fields[0];
    r.seed = std::stoull(fields[1]);
    r.mode = fields[2];
    r.failed = fields[3] == "1";
    r.error = fields[4];
    r.final_energy = std::stod(fields[5]);
    r.ground_energy = std::stod(fields[6]);
    r.approximation_ratio = std::stod(fields[7]);
    r.optimal_probability_exact = std::stod(fields[8]);
    r.optimal_probability_sampled = std::stod(fields[9]);
    r.jumps = std::stoi(fields[10]);
    r.plateau_triggered = fields[11] == "1";
    r.iterations = std::stoi(fields[12]);
    table.rows.push_back(std::move(r));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Benchmark config JSON

namespace {

GeneratorSpec parse_generator(const json& j) {
  GeneratorSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ring") spec.kind = GeneratorSpec::Kind::Ring;
  else if (kind == "complete") spec.kind = GeneratorSpec::Kind::Complete;
  else if (kind == "erdos_renyi") spec.kind = GeneratorSpec::Kind::ErdosRenyi;
  else if (kind == "random_regular") spec.kind = GeneratorSpec::Kind::RandomRegular;
  else throw ConfigError("unknown generator kind: " + kind);
  spec.n = j.at("n").get<int>();
  if (j.contains("degree")) spec.degree = j.at("degree").get<int>();
  if (j.contains("edge_probability")) spec.edge_probability = j.at("edge_probability").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

InstanceSource parse_instance(const json& j) {
  InstanceSource src;
  if (j.contains("path")) src.path = j.at("path").get<std::string>();
  if (j.contains("generator")) src.generator = parse_generator(j.at("generator"));
  return src;
}

}  // namespace

BenchmarkConfig parse_benchmark_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid benchmark config JSON: ") + e.what());
  }
  try {
    BenchmarkConfig config;
    for (const auto& inst : j.at("instances")) config.instances.push_back(parse_instance(inst));
    for (const auto& s : j.at("seeds")) config.seeds.push_back(s.get<std::uint64_t>());
    RunConfig& base = config.base;
    if (j.contains("depth")) base.depth = j.at("depth").get<int>();
    if (j.contains("jump_budget")) base.jump_budget = j.at("jump_budget").get<int>();
    if (j.contains("shots")) base.shots = j.at("shots").get<int>();
    if (j.contains("init_angle_range")) base.init_angle_range = j.at("init_angle_range").get<double>();
    if (j.contains("restart_angle_range"))
      base.restart_angle_range = j.at("restart_angle_range").get<double>();
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      if (o.contains("step")) base.optimizer.step = o.at("step").get<double>();
      if (o.contains("momentum")) base.optimizer.momentum = o.at("momentum").get<double>();
      if (o.contains("max_iterations"))
        base.optimizer.max_iterations = o.at("max_iterations").get<int>();
      if (o.contains("grad_tolerance"))
        base.optimizer.grad_tolerance = o.at("grad_tolerance").get<double>();
      if (o.contains("fd_step")) base.optimizer.fd_step = o.at("fd_step").get<double>();
    }
    if (j.contains("plateau")) {
      const json& p = j.at("plateau");
      if (p.contains("grad_tol")) base.plateau.grad_tol = p.at("grad_tol").get<double>();
      if (p.contains("window")) base.plateau.window = p.at("window").get<int>();
    }
    if (j.contains("pool")) {
      const json& p = j.at("pool");
      if (p.contains("size")) base.pool.size = p.at("size").get<int>();
      if (p.contains("include_identity"))
        base.pool.include_identity = p.at("include_identity").get<bool>();
      if (p.contains("y_sweeps")) base.pool.y_sweeps = p.at("y_sweeps").get<int>();
    }
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("benchmark config missing or mistyped field: ") + e.what());
  }
}

}  // namespace qjump
