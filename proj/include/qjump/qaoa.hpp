#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qjump/statevector.hpp"

namespace qjump {

struct QaoaParams {
  Eigen::VectorXd gammas;
  Eigen::VectorXd betas;

  int depth() const { return static_cast<int>(gammas.size()); }
  // Flat layout (γ₁…γ_p, β₁…β_p) used by gradients and traces.
  Eigen::VectorXd flat() const;
  static QaoaParams from_flat(const Eigen::VectorXd& v);
};

// The ansatz: |+⟩^n, then for each k the cut-phase separator exp(−iγ_k·cut(x))
// -- realized as CostPhase(−γ_k) since energies are −cut -- followed by
// MixerX(β_k). Overloads taking an input state start there instead of |+⟩^n.
State qaoa_state(const DiagonalHamiltonian& h, const QaoaParams& params);
State qaoa_state(const DiagonalHamiltonian& h, const QaoaParams& params, const State& input);

double qaoa_energy(const DiagonalHamiltonian& h, const QaoaParams& params);
double qaoa_energy(const DiagonalHamiltonian& h, const QaoaParams& params, const State& input);

// Central finite differences with step fd_step on each coordinate, ordered
// (γ₁…γ_p, β₁…β_p).
Eigen::VectorXd qaoa_gradient(const DiagonalHamiltonian& h, const QaoaParams& params,
                              double fd_step = 1e-4);
Eigen::VectorXd qaoa_gradient(const DiagonalHamiltonian& h, const QaoaParams& params,
                              const State& input, double fd_step = 1e-4);

struct OptimizerConfig {
  double step = 0.05;
  double momentum = 0.0;
  int max_iterations = 2000;
  double grad_tolerance = 1e-6;
  double fd_step = 1e-4;
  // Plateau stop signal: gradient ∞-norm below plateau_grad_tol for
  // plateau_window consecutive iterations. window 0 disables it.
  double plateau_grad_tol = 1e-3;
  int plateau_window = 0;
};

enum class StopReason { MaxIterations, GradientConverged, PlateauDetected };

const char* to_string(StopReason r);

struct OptIterate {
  QaoaParams params;
  double energy = 0.0;
  double grad_inf_norm = 0.0;
};

struct OptTrace {
  std::vector<OptIterate> iterates;
  StopReason reason = StopReason::MaxIterations;
  // Index of the lowest-energy iterate; optimize's reported optimum.
  std::size_t best_index = 0;

  const OptIterate& best() const { return iterates[best_index]; }
};

// Fixed-step gradient descent with optional momentum. Deterministic; records
// every iterate. input == nullptr starts the ansatz from |+⟩^n.
OptTrace optimize(const DiagonalHamiltonian& h, const QaoaParams& init,
                  const OptimizerConfig& config, const State* input = nullptr);

struct LandscapePoint {
  double gamma = 0.0;
  double beta = 0.0;
  double energy = 0.0;
};

struct LandscapeTable {
  int depth = 1;
  int grid = 64;
  // Row-major over the lattice: outer index γ, inner index β.
  std::vector<LandscapePoint> points;
};

// Energies on a uniform grid×grid lattice over [0,π]², all p layers sharing
// one (γ, β) pair.
LandscapeTable landscape(const DiagonalHamiltonian& h, int depth, int grid);

// Three-column "gamma beta energy" text, one blank line between successive γ
// blocks (plot-table convention). header lines, if any, are emitted first as
// '#'-prefixed comments.
void write_landscape(std::ostream& os, const LandscapeTable& table,
                     const std::vector<std::string>& header = {});

}  // namespace qjump
