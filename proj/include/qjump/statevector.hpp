#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qjump/problem.hpp"

namespace qjump {

using Complex = std::complex<double>;

// Dense n-qubit state. amplitudes has length 2^n_qubits and unit Euclidean
// norm; qubit 0 is the least significant bit of the basis index.
struct State {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  std::int64_t dim() const { return std::int64_t{1} << n_qubits; }
  double norm() const { return amplitudes.norm(); }
};

// Result of a projection: amplitudes are intentionally subnormalized and the
// squared norm (the post-selection success probability) is carried alongside.
// Never renormalized implicitly.
struct SubnormalizedState {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;
  double norm_sq = 0.0;

  // Throws DegenerateJumpError when the branch is numerically empty.
  State normalized() const;
};

// Multiplies amplitude x by exp(−iγ·E(x)), E the diagonal energy.
struct CostPhase {
  double gamma = 0.0;
  std::shared_ptr<const DiagonalHamiltonian> hamiltonian;
};

// exp(−iβX) applied independently to every qubit.
struct MixerX {
  double beta = 0.0;
};

enum class PauliAxis { X, Y, Z };

// exp(−iθ/2 σ_axis) on one qubit (standard rotation-gate convention).
struct SingleQubitRotation {
  PauliAxis axis = PauliAxis::X;
  int qubit = 0;
  double angle = 0.0;
};

// exp(−iθ/2 P), P the tensor product given by paulis: character q (from
// {I,X,Y,Z}) acts on qubit q; length must equal the state's qubit count.
struct PauliStringRotation {
  std::string paulis;
  double angle = 0.0;
};

using LayerDescriptor = std::variant<CostPhase, MixerX, SingleQubitRotation, PauliStringRotation>;
using CircuitDescription = std::vector<LayerDescriptor>;

State uniform_superposition(int n_qubits);
State basis_state(int n_qubits, std::uint64_t index);

// Raw linear action of a layer's unitary on an amplitude vector of length
// 2^n_qubits; no norm requirements on the input, so it also serves the
// subnormalized register blocks of the LCU simulation.
void apply_layer_inplace(Eigen::VectorXcd& amplitudes, int n_qubits, const LayerDescriptor& layer);

State apply_layer(const State& state, const LayerDescriptor& layer);
State apply_circuit(const State& state, const CircuitDescription& circuit);

// Σ_x conj(a_x)·b_x.
Complex inner_product(const State& a, const State& b);

// Σ_x |amp_x|²·E(x).
double expectation_diagonal(const State& state, const DiagonalHamiltonian& h);

// shots i.i.d. draws from |amp_x|²; deterministic for a fixed seed.
std::vector<std::uint64_t> sample_bitstrings(const State& state, int shots, std::uint64_t seed);

}  // namespace qjump
