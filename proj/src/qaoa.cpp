#include "qjump/qaoa.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>

#include "qjump/errors.hpp"

namespace qjump {

Eigen::VectorXd QaoaParams::flat() const {
  Eigen::VectorXd v(gammas.size() + betas.size());
  v << gammas, betas;
  return v;
}

QaoaParams QaoaParams::from_flat(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0 || v.size() == 0) {
    throw ShapeError("flat parameter vector must have even positive length");
  }
  const Eigen::Index p = v.size() / 2;
  QaoaParams params;
  params.gammas = v.head(p);
  params.betas = v.tail(p);
  return params;
}

namespace {

void check_params(const QaoaParams& params) {
  if (params.gammas.size() != params.betas.size() || params.gammas.size() == 0) {
    throw ShapeError("gammas and betas must have equal positive length");
  }
  if (!params.gammas.allFinite() || !params.betas.allFinite()) {
    throw DescriptorError("QAOA parameters must be finite");
  }
}

// The cut-phase separator exp(−iγ·cut(x)) equals CostPhase(−γ) because the
// stored energies are −cut.
State evolve(const DiagonalHamiltonian& h, const QaoaParams& params, State state) {
  check_params(params);
  // Non-owning alias: h outlives the evaluation, so no copy of the energy
  // vector is needed per call.
  std::shared_ptr<const DiagonalHamiltonian> href(std::shared_ptr<void>(), &h);
  for (int k = 0; k < params.depth(); ++k) {
    apply_layer_inplace(state.amplitudes, state.n_qubits, CostPhase{-params.gammas[k], href});
    apply_layer_inplace(state.amplitudes, state.n_qubits, MixerX{params.betas[k]});
  }
  return state;
}

}  // namespace

State qaoa_state(const DiagonalHamiltonian& h, const QaoaParams& params) {
  return evolve(h, params, uniform_superposition(h.n_qubits));
}

State qaoa_state(const DiagonalHamiltonian& h, const QaoaParams& params, const State& input) {
  if (input.n_qubits != h.n_qubits) throw ShapeError("input state and Hamiltonian differ");
  return evolve(h, params, input);
}

double qaoa_energy(const DiagonalHamiltonian& h, const QaoaParams& params) {
  return expectation_diagonal(qaoa_state(h, params), h);
}

double qaoa_energy(const DiagonalHamiltonian& h, const QaoaParams& params, const State& input) {
  return expectation_diagonal(qaoa_state(h, params, input), h);
}

namespace {

Eigen::VectorXd finite_difference_gradient(const DiagonalHamiltonian& h, const QaoaParams& params,
                                           const State* input, double fd_step) {
  check_params(params);
  if (!(fd_step > 0.0)) throw ConfigError("finite-difference step must be positive");
  const Eigen::VectorXd center = params.flat();
  Eigen::VectorXd grad(center.size());
  for (Eigen::Index i = 0; i < center.size(); ++i) {
    Eigen::VectorXd plus = center, minus = center;
    plus[i] += fd_step;
    minus[i] -= fd_step;
    const double ep = input ? qaoa_energy(h, QaoaParams::from_flat(plus), *input)
                            : qaoa_energy(h, QaoaParams::from_flat(plus));
    const double em = input ? qaoa_energy(h, QaoaParams::from_flat(minus), *input)
                            : qaoa_energy(h, QaoaParams::from_flat(minus));
    grad[i] = (ep - em) / (2 * fd_step);
  }
  return grad;
}

}  // namespace

Eigen::VectorXd qaoa_gradient(const DiagonalHamiltonian& h, const QaoaParams& params,
                              double fd_step) {
  return finite_difference_gradient(h, params, nullptr, fd_step);
}

Eigen::VectorXd qaoa_gradient(const DiagonalHamiltonian& h, const QaoaParams& params,
                              const State& input, double fd_step) {
  return finite_difference_gradient(h, params, &input, fd_step);
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::GradientConverged: return "gradient_converged";
    case StopReason::PlateauDetected: return "plateau_detected";
  }
  return "unknown";
}

OptTrace optimize(const DiagonalHamiltonian& h, const QaoaParams& init,
                  const OptimizerConfig& config, const State* input) {
  check_params(init);
  if (config.max_iterations < 0) throw ConfigError("max_iterations must be >= 0");

  OptTrace trace;
  QaoaParams params = init;
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(2 * init.depth());
  int below_plateau = 0;

  for (int iter = 0;; ++iter) {
    const double energy =
        input ? qaoa_energy(h, params, *input) : qaoa_energy(h, params);
    if (!std::isfinite(energy)) throw NumericalError("non-finite energy during optimization");
    const Eigen::VectorXd grad =
        finite_difference_gradient(h, params, input, config.fd_step);
    const double gnorm = grad.lpNorm<Eigen::Infinity>();

    trace.iterates.push_back({params, energy, gnorm});
    if (energy < trace.iterates[trace.best_index].energy) {
      trace.best_index = trace.iterates.size() - 1;
    }

    below_plateau = gnorm < config.plateau_grad_tol ? below_plateau + 1 : 0;

    if (gnorm < config.grad_tolerance) {
      trace.reason = StopReason::GradientConverged;
      break;
    }
    if (config.plateau_window > 0 && below_plateau >= config.plateau_window) {
      trace.reason = StopReason::PlateauDetected;
      break;
    }
    if (iter >= config.max_iterations) {
      trace.reason = StopReason::MaxIterations;
      break;
    }

    velocity = config.momentum * velocity - config.step * grad;
    params = QaoaParams::from_flat(params.flat() + velocity);
  }
  return trace;
}

LandscapeTable landscape(const DiagonalHamiltonian& h, int depth, int grid) {
  if (grid < 2) throw ConfigError("landscape grid must be >= 2");
  if (depth < 1) throw ConfigError("landscape depth must be >= 1");
  constexpr double pi = 3.14159265358979323846;
  LandscapeTable table;
  table.depth = depth;
  table.grid = grid;
  table.points.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    const double gamma = pi * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double beta = pi * j / (grid - 1);
      QaoaParams params;
      params.gammas = Eigen::VectorXd::Constant(depth, gamma);
      params.betas = Eigen::VectorXd::Constant(depth, beta);
      table.points.push_back({gamma, beta, qaoa_energy(h, params)});
    }
  }
  return table;
}

void write_landscape(std::ostream& os, const LandscapeTable& table,
                     const std::vector<std::string>& header) {
  char buf[96];
  for (const auto& line : header) {
    os << "# " << line << "\n";
  }
  for (int i = 0; i < table.grid; ++i) {
    if (i > 0) os << "\n";
    for (int j = 0; j < table.grid; ++j) {
      const auto& p = table.points[static_cast<std::size_t>(i) * table.grid + j];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", p.gamma, p.beta, p.energy);
      os << buf << "\n";
    }
  }
}

}  // namespace qjump
