#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qjump/conic.hpp"
#include "qjump/qaoa.hpp"

namespace qjump {

struct GeneratorSpec {
  enum class Kind { Ring, RandomRegular, ErdosRenyi, Complete };
  Kind kind = Kind::Ring;
  int n = 8;
  int degree = 3;              // RandomRegular
  double edge_probability = 0.5;  // ErdosRenyi
  std::uint64_t seed = 0;
};

Graph generate_graph(const GeneratorSpec& spec);

// Either a graph file path or a generator spec.
struct InstanceSource {
  std::optional<std::string> path;
  std::optional<GeneratorSpec> generator;

  Graph load() const;
  std::string describe() const;
};

struct PlateauConfig {
  double grad_tol = 1e-3;
  int window = 10;
};

struct RunConfig {
  InstanceSource instance;
  int depth = 2;
  OptimizerConfig optimizer;
  PlateauConfig plateau;
  PoolConfig pool;
  int jump_budget = 1;
  int shots = 4096;
  // Initial angles drawn uniformly from [0, init_angle_range); post-jump
  // restarts use [0, restart_angle_range).
  double init_angle_range = 3.141592653589793;
  double restart_angle_range = 0.2;
  std::string output_dir;
  std::uint64_t master_seed = 1;
};

// True iff the gradient ∞-norm stayed below grad_tol for the last `window`
// consecutive iterations of the trace.
bool detect_plateau(const OptTrace& trace, double grad_tol, int window);

struct JumpEvent {
  int iteration = 0;  // global iteration count at which the jump fired
  double energy_before = 0.0;
  double realized_energy = 0.0;  // diagonal expectation of the post-jump state
  double alpha_l1 = 0.0;
  GepSolution solution;  // λ_opt, α, effective rank, both success probabilities
};

struct SegmentRecord {
  OptTrace trace;
  // Energies are recomputable from params + the segment's input state; the
  // input is identified by the preceding jump (segment 0 starts from |+⟩^n).
};

struct RunReport {
  std::string instance;
  int n_qubits = 0;
  int depth = 0;
  std::uint64_t master_seed = 0;
  std::vector<SegmentRecord> segments;
  std::vector<JumpEvent> jumps;
  bool plateau_triggered = false;
  int total_iterations = 0;
  double final_energy = 0.0;
  double ground_energy = 0.0;
  double approximation_ratio = 0.0;  // final / ground, in [0,1] for MaxCut
  double optimal_probability_exact = 0.0;
  double optimal_probability_sampled = 0.0;
  // Final state description: which segment/iterate won, so the state can be
  // reconstructed and the report audited.
  int final_segment = 0;
  std::size_t final_iterate = 0;
};

// Optimize until the plateau signal fires, jump (pool build → GEP → M_α), and
// resume from the post-jump state with fresh small seeded angles; repeat up
// to config.jump_budget. Budget 0 reduces to the plain baseline optimizer.
RunReport run_jump_enhanced(const RunConfig& config);

// Reconstructs the final state a report refers to (for audits/tests).
State reconstruct_final_state(const RunConfig& config, const RunReport& report);

std::string report_to_json(const RunReport& report);

struct BenchmarkRow {
  std::string instance;
  std::uint64_t seed = 0;
  std::string mode;  // "baseline" | "jump"
  bool failed = false;
  std::string error;
  double final_energy = 0.0;
  double ground_energy = 0.0;
  double approximation_ratio = 0.0;
  double optimal_probability_exact = 0.0;
  double optimal_probability_sampled = 0.0;
  int jumps = 0;
  bool plateau_triggered = false;
  int iterations = 0;
};

struct BenchmarkAggregate {
  std::string instance;
  std::string mode;
  int runs = 0;
  double mean_approximation_ratio = 0.0;
  double median_approximation_ratio = 0.0;
  double mean_optimal_probability = 0.0;
  double median_optimal_probability = 0.0;
  double mean_final_energy = 0.0;
  double median_final_energy = 0.0;
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;
  std::vector<BenchmarkAggregate> aggregates;
};

struct BenchmarkConfig {
  std::vector<InstanceSource> instances;
  std::vector<std::uint64_t> seeds;
  RunConfig base;  // instance/master_seed fields overridden per cell
};

// Paired baseline vs jump-enhanced runs for every (instance, seed) cell.
// Failures are recorded per row and the sweep continues.
BenchmarkTable run_benchmark(const BenchmarkConfig& config);

void write_benchmark_csv(std::ostream& os, const BenchmarkTable& table);
void write_aggregates_csv(std::ostream& os, const BenchmarkTable& table);
BenchmarkTable parse_benchmark_csv(std::istream& is);

BenchmarkConfig parse_benchmark_config(const std::string& json_text);

// %.17g formatting: shortest representation that round-trips doubles exactly.
std::string format_double(double v);

}  // namespace qjump
