#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qjump/statevector.hpp"

namespace qjump {

inline constexpr int kMaxPoolSize = 16;

// Ordered list of ℓ unitary circuits U₁…U_ℓ spanning the conic directions.
struct JumpPool {
  std::vector<CircuitDescription> unitaries;

  int size() const { return static_cast<int>(unitaries.size()); }
};

struct PoolConfig {
  int size = 4;
  bool include_identity = true;  // entry 1 is the identity circuit
  int y_sweeps = 0;              // trailing entries of per-qubit Y rotations
};

// Default family: {identity} ∪ {CostPhase(γ̃)·MixerX(β̃) at seeded random
// angles} ∪ {optional single-qubit Y-rotation sweeps}. Deterministic per seed.
JumpPool build_pool(const PoolConfig& config, const DiagonalHamiltonian& h, std::uint64_t seed);

// E_ij = ⟨φ|Uᵢ†Uⱼ|φ⟩ (Gram/overlap), H_ij = ⟨φ|Uᵢ†HUⱼ|φ⟩. Both Hermitian by
// construction; E is PSD with unit diagonal up to roundoff.
struct MomentPair {
  Eigen::MatrixXcd overlap;      // E
  Eigen::MatrixXcd hamiltonian;  // H

  int size() const { return static_cast<int>(overlap.rows()); }
};

MomentPair moment_matrices(const State& phi, const JumpPool& pool, const DiagonalHamiltonian& h);

struct GepOptions {
  // Metric eigenvalues below rank_tolerance·max are truncated.
  double rank_tolerance = 1e-10;
  // Reduced eigenvalues within this of the minimum count as degenerate; the
  // tie is broken toward the α with the smallest 1-norm (best root-encoding
  // success probability).
  double degeneracy_tolerance = 1e-9;
};

struct GepSolution {
  double lambda_opt = 0.0;
  Eigen::VectorXcd alpha;  // normalized to α†Eα = 1, largest entry real ≥ 0
  int effective_rank = 0;
  double p_succ_root = 0.0;   // ‖α‖₁⁻²
  double p_succ_naive = 0.0;  // (ℓ·‖α‖₂²)⁻¹
  // ‖(H − λE)·v‖ for the pre-normalization eigenvector v (unit E-norm).
  double residual_norm = 0.0;
};

// Minimal generalized eigenpair of (H, E): eigendecompose E, truncate the
// numerically null metric directions, solve the whitened reduced operator,
// and map back.
GepSolution solve_gep(const MomentPair& m, const GepOptions& options = {});

// Σ αᵢ Uᵢ|φ⟩, unnormalized.
Eigen::VectorXcd conic_combination(const State& phi, const JumpPool& pool,
                                   const Eigen::VectorXcd& alpha);

double root_success_probability(const Eigen::VectorXcd& alpha);
double naive_success_probability(const Eigen::VectorXcd& alpha);

struct JumpResult {
  State state;
  double energy = 0.0;  // diagonal expectation of the post-jump state
  double p_succ_root = 0.0;
  double p_succ_naive = 0.0;
};

// The non-unitary jump M_α|φ⟩/‖·‖. Caller is expected to supply α with
// α†Eα = 1 (within 1e−8) for the pool-induced metric; a numerically vanishing
// combination raises DegenerateJumpError.
JumpResult apply_jump(const State& phi, const JumpPool& pool, const Eigen::VectorXcd& alpha,
                      const DiagonalHamiltonian& h);

enum class LcuEncoding { Root, Naive };

const char* to_string(LcuEncoding e);

// Explicit composite-register simulation of the LCU circuit: prepare the
// ancilla state per encoding, apply the select unitary Σ Uᵢ⊗|i⟩⟨i|, project
// the ancilla, and compare against the direct conic combination.
struct LcuReport {
  LcuEncoding encoding = LcuEncoding::Root;
  int ancilla_qubits = 0;
  double fidelity = 0.0;          // |⟨post-selected|direct⟩|²
  double p_succ_measured = 0.0;   // ‖PV|φ⟩‖²
  double p_succ_closed_form = 0.0;
  bool fidelity_ok = false;       // fidelity ≥ 1 − 1e−10
  bool p_succ_ok = false;         // |measured − closed form| ≤ 1e−10

  bool ok() const { return fidelity_ok && p_succ_ok; }
};

inline constexpr double kLcuFidelityTolerance = 1e-10;
inline constexpr double kLcuProbabilityTolerance = 1e-10;

LcuReport lcu_verify(const State& phi, const JumpPool& pool, const Eigen::VectorXcd& alpha,
                     LcuEncoding encoding);

// Principal square root, branch arg ∈ (−π, π] (argument halving).
Complex principal_sqrt(Complex z);

}  // namespace qjump
