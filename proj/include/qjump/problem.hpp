#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <vector>

namespace qjump {

inline constexpr int kMaxQubits = 20;

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

// Simple undirected weighted graph; edges stored with u < v, no duplicates.
struct Graph {
  int n_vertices = 0;
  std::vector<WeightedEdge> edges;

  double total_weight() const;
};

// Diagonal cost operator stored densely: energies[x] is the energy of
// computational basis state x. MaxCut convention: each edge contributes
// w·(z_u z_v − 1)/2 with z_i = +1 for bit i == 0, so the ground energy equals
// −maxcut and energies are ≤ 0 for nonnegative weights. Qubit i is the least
// significant bit of x throughout.
struct DiagonalHamiltonian {
  int n_qubits = 0;
  Eigen::VectorXd energies;
  std::vector<WeightedEdge> source_edges;
};

// Text format: first non-comment line "n m", then m lines "u v" or "u v w".
// '#' starts a comment. Edges are normalized to u < v; self-loops, duplicates,
// and out-of-range indices are rejected with the offending line number.
Graph parse_graph(std::string_view text);

Graph load_graph(const std::string& path);

DiagonalHamiltonian maxcut_hamiltonian(const Graph& g);

// Cut weight of the bipartition encoded by bitstring x, straight from the
// edge list (used as the independent oracle for Hamiltonian energies).
double cut_value(const Graph& g, std::uint64_t x);

struct GroundTruth {
  double energy = 0.0;
  std::vector<std::uint64_t> optimal_bitstrings;  // ascending
};

// Exact minimum and argmin set by full enumeration.
GroundTruth brute_force_ground(const DiagonalHamiltonian& h);

}  // namespace qjump
