#include "qjump/conic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <memory>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_pool_size(int ell) {
  if (ell < 1 || ell > kMaxPoolSize) {
    throw ConfigError("pool size " + std::to_string(ell) + " outside [1, " +
                      std::to_string(kMaxPoolSize) + "]");
  }
}

}  // namespace

JumpPool build_pool(const PoolConfig& config, const DiagonalHamiltonian& h, std::uint64_t seed) {
  check_pool_size(config.size);
  if (config.y_sweeps < 0) throw ConfigError("y_sweeps must be >= 0");
  const int reserved = (config.include_identity ? 1 : 0) + config.y_sweeps;
  if (reserved > config.size) {
    throw ConfigError("identity + y_sweeps exceed the pool size");
  }

  std::mt19937_64 rng(seed);
  auto href = std::make_shared<const DiagonalHamiltonian>(h);

  JumpPool pool;
  pool.unitaries.reserve(static_cast<std::size_t>(config.size));
  if (config.include_identity) {
    pool.unitaries.emplace_back();  // empty circuit
  }
  const int qaoa_entries = config.size - reserved;
  for (int k = 0; k < qaoa_entries; ++k) {
    const double gamma = uniform_double(rng, 0.0, 2 * kPi);
    const double beta = uniform_double(rng, 0.0, kPi);
    pool.unitaries.push_back({CostPhase{gamma, href}, MixerX{beta}});
  }
  for (int k = 0; k < config.y_sweeps; ++k) {
    CircuitDescription sweep;
    sweep.reserve(static_cast<std::size_t>(h.n_qubits));
    for (int q = 0; q < h.n_qubits; ++q) {
      sweep.push_back(SingleQubitRotation{PauliAxis::Y, q, uniform_double(rng, 0.0, 2 * kPi)});
    }
    pool.unitaries.push_back(std::move(sweep));
  }
  return pool;
}

MomentPair moment_matrices(const State& phi, const JumpPool& pool, const DiagonalHamiltonian& h) {
  if (phi.n_qubits != h.n_qubits) {
    throw ShapeError("state and Hamiltonian qubit counts differ");
  }
  const int ell = pool.size();
  check_pool_size(ell);

  // Each Uⱼ|φ⟩ is computed once.
  std::vector<State> images;
  images.reserve(static_cast<std::size_t>(ell));
  for (const auto& circuit : pool.unitaries) {
    images.push_back(apply_circuit(phi, circuit));
  }

  MomentPair m;
  m.overlap = Eigen::MatrixXcd(ell, ell);
  m.hamiltonian = Eigen::MatrixXcd(ell, ell);
  for (int i = 0; i < ell; ++i) {
    for (int j = i; j < ell; ++j) {
      const Complex e = inner_product(images[i], images[j]);
      Complex hm(0.0, 0.0);
      for (std::int64_t x = 0; x < phi.dim(); ++x) {
        hm += std::conj(images[i].amplitudes[x]) * h.energies[x] * images[j].amplitudes[x];
      }
      if (i == j) {
        m.overlap(i, i) = Complex(e.real(), 0.0);
        m.hamiltonian(i, i) = Complex(hm.real(), 0.0);
      } else {
        m.overlap(i, j) = e;
        m.overlap(j, i) = std::conj(e);
        m.hamiltonian(i, j) = hm;
        m.hamiltonian(j, i) = std::conj(hm);
      }
    }
  }
  return m;
}

double root_success_probability(const Eigen::VectorXcd& alpha) {
  const double l1 = alpha.lpNorm<1>();
  return 1.0 / (l1 * l1);
}

double naive_success_probability(const Eigen::VectorXcd& alpha) {
  return 1.0 / (static_cast<double>(alpha.size()) * alpha.squaredNorm());
}

GepSolution solve_gep(const MomentPair& m, const GepOptions& options) {
  const int ell = m.size();
  if (ell < 1 || m.overlap.cols() != ell || m.hamiltonian.rows() != ell ||
      m.hamiltonian.cols() != ell) {
    throw ShapeError("moment matrices must be square and of equal size");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> metric(m.overlap);
  if (metric.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the metric failed");
  }
  const Eigen::VectorXd evals = metric.eigenvalues();  // ascending
  const double emax = evals.maxCoeff();
  if (!(emax > 1e-12)) {
    throw DegenerateMetricError("metric matrix is numerically zero");
  }

  // Whitening map restricted to the numerically nonsingular subspace:
  // B = V_r · D_r^{−1/2}, so B†EB = 1_r.
  const double cutoff = options.rank_tolerance * emax;
  std::vector<int> kept;
  for (int i = 0; i < ell; ++i) {
    if (evals[i] > cutoff) kept.push_back(i);
  }
  const int rank = static_cast<int>(kept.size());
  if (rank == 0) throw DegenerateMetricError("metric matrix has no retained directions");

  Eigen::MatrixXcd whitening(ell, rank);
  for (int c = 0; c < rank; ++c) {
    whitening.col(c) = metric.eigenvectors().col(kept[c]) / std::sqrt(evals[kept[c]]);
  }

  Eigen::MatrixXcd reduced = whitening.adjoint() * m.hamiltonian * whitening;
  const double herm_dev = (reduced - reduced.adjoint()).norm();
  if (herm_dev > 1e-8 * std::max(1.0, reduced.norm())) {
    throw NumericalError("whitened operator is not Hermitian within tolerance");
  }
  reduced = 0.5 * (reduced + reduced.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the whitened operator failed");
  }
  const double lambda = es.eigenvalues()(0);

  // Among (numerically) degenerate minimal eigenvectors, take the α with the
  // smallest 1-norm: the highest root-encoding success probability.
  GepSolution sol;
  sol.lambda_opt = lambda;
  sol.effective_rank = rank;
  double best_l1 = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_pre;
  for (int k = 0; k < rank; ++k) {
    if (es.eigenvalues()(k) > lambda + options.degeneracy_tolerance) break;
    const Eigen::VectorXcd candidate = whitening * es.eigenvectors().col(k);
    const double enorm =
        std::sqrt(std::real(Complex(candidate.adjoint() * m.overlap * candidate)));
    const Eigen::VectorXcd alpha = candidate / enorm;
    const double l1 = alpha.lpNorm<1>();
    if (l1 < best_l1) {
      best_l1 = l1;
      sol.alpha = alpha;
      best_pre = candidate;
    }
  }

  // Deterministic global phase: largest-magnitude entry real and positive.
  int pivot = 0;
  for (int i = 1; i < ell; ++i) {
    if (std::abs(sol.alpha[i]) > std::abs(sol.alpha[pivot])) pivot = i;
  }
  const double mag = std::abs(sol.alpha[pivot]);
  if (mag > 0) sol.alpha *= std::conj(sol.alpha[pivot]) / mag;

  sol.residual_norm = ((m.hamiltonian - lambda * m.overlap) * best_pre).norm();
  sol.p_succ_root = root_success_probability(sol.alpha);
  sol.p_succ_naive = naive_success_probability(sol.alpha);
  return sol;
}

Eigen::VectorXcd conic_combination(const State& phi, const JumpPool& pool,
                                   const Eigen::VectorXcd& alpha) {
  const int ell = pool.size();
  check_pool_size(ell);
  if (alpha.size() != ell) {
    throw ShapeError("coefficient vector length does not match the pool size");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(phi.dim());
  for (int i = 0; i < ell; ++i) {
    if (alpha[i] == Complex(0.0, 0.0)) continue;
    v += alpha[i] * apply_circuit(phi, pool.unitaries[i]).amplitudes;
  }
  return v;
}

JumpResult apply_jump(const State& phi, const JumpPool& pool, const Eigen::VectorXcd& alpha,
                      const DiagonalHamiltonian& h) {
  Eigen::VectorXcd v = conic_combination(phi, pool, alpha);
  const double norm = v.norm();
  if (norm < 1e-8) throw DegenerateJumpError("conic combination is numerically zero");

  JumpResult result;
  result.state = State{phi.n_qubits, v / norm};
  result.energy = expectation_diagonal(result.state, h);
  result.p_succ_root = root_success_probability(alpha);
  result.p_succ_naive = naive_success_probability(alpha);
  return result;
}

Complex principal_sqrt(Complex z) {
  double theta = std::atan2(z.imag(), z.real());
  if (theta == -kPi) theta = kPi;  // branch arg ∈ (−π, π]
  return std::polar(std::sqrt(std::abs(z)), theta / 2);
}

const char* to_string(LcuEncoding e) {
  return e == LcuEncoding::Root ? "root" : "naive";
}

LcuReport lcu_verify(const State& phi, const JumpPool& pool, const Eigen::VectorXcd& alpha,
                     LcuEncoding encoding) {
  const int ell = pool.size();
  check_pool_size(ell);
  if (alpha.size() != ell) {
    throw ShapeError("coefficient vector length does not match the pool size");
  }

  int ancilla = 0;
  while ((1 << ancilla) < ell) ++ancilla;
  const int padded = 1 << ancilla;
  if (phi.n_qubits + ancilla > kMaxQubits) {
    throw CapacityError("composite register needs " + std::to_string(phi.n_qubits + ancilla) +
                        " qubits, capacity is " + std::to_string(kMaxQubits));
  }

  // Ancilla preparation per encoding; padding levels carry zero ψ amplitude
  // and select the identity.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(padded);
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(padded);
  if (encoding == LcuEncoding::Root) {
    const double l1 = alpha.lpNorm<1>();
    for (int i = 0; i < ell; ++i) {
      const Complex root = principal_sqrt(alpha[i]);
      psi[i] = root / std::sqrt(l1);
      xi[i] = std::conj(root) / std::sqrt(l1);
    }
  } else {
    const double l2 = alpha.norm();
    for (int i = 0; i < ell; ++i) {
      psi[i] = alpha[i] / l2;
      xi[i] = 1.0 / std::sqrt(static_cast<double>(ell));  // uniform over used levels
    }
  }

  // Composite register |φ⟩ ⊗ |ψ⟩ₐ, ancilla in the high bits: index (i << n) | x.
  const std::int64_t main_dim = phi.dim();
  Eigen::VectorXcd composite(main_dim * padded);
  for (int i = 0; i < padded; ++i) {
    composite.segment(i * main_dim, main_dim) = psi[i] * phi.amplitudes;
  }

  // Select unitary 𝒰 = Σ Uᵢ ⊗ |i⟩⟨i|ₐ acts blockwise on the ancilla value.
  for (int i = 0; i < ell; ++i) {
    Eigen::VectorXcd block = composite.segment(i * main_dim, main_dim);
    for (const auto& layer : pool.unitaries[i]) {
      apply_layer_inplace(block, phi.n_qubits, layer);
    }
    composite.segment(i * main_dim, main_dim) = block;
  }

  // P = 1 ⊗ ⟨ξ|ₐ: scan the ancilla, keep the main register.
  Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(main_dim);
  for (int i = 0; i < padded; ++i) {
    projected += std::conj(xi[i]) * composite.segment(i * main_dim, main_dim);
  }
  SubnormalizedState branch{phi.n_qubits, projected, projected.squaredNorm()};

  LcuReport report;
  report.encoding = encoding;
  report.ancilla_qubits = ancilla;
  report.p_succ_measured = branch.norm_sq;
  report.p_succ_closed_form = encoding == LcuEncoding::Root
                                  ? root_success_probability(alpha)
                                  : naive_success_probability(alpha);

  const State post = branch.normalized();
  Eigen::VectorXcd direct = conic_combination(phi, pool, alpha);
  direct /= direct.norm();
  const Complex overlap = post.amplitudes.dot(direct);
  report.fidelity = std::norm(overlap);

  report.fidelity_ok = report.fidelity >= 1.0 - kLcuFidelityTolerance;
  report.p_succ_ok =
      std::abs(report.p_succ_measured - report.p_succ_closed_form) <= kLcuProbabilityTolerance;
  return report;
}

}  // namespace qjump
