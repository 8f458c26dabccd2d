#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qjump::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

Eigen::Matrix2cd pauli(char p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli");
  }
  return m;
}

// op acting on qubit q of n (qubit 0 = least significant bit).
Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd& op, int q, int n) {
  const auto eye = [](int k) {
    return Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(std::int64_t{1} << k, std::int64_t{1} << k));
  };
  return kron(eye(n - 1 - q), kron(op, eye(q)));
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd dense_layer_matrix(const LayerDescriptor& layer, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;

  if (const auto* cp = std::get_if<CostPhase>(&layer)) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t x = 0; x < dim; ++x) {
      m(x, x) = std::exp(-kI * cp->gamma * cp->hamiltonian->energies[x]);
    }
    return m;
  }
  if (const auto* mx = std::get_if<MixerX>(&layer)) {
    Eigen::Matrix2cd m1;
    m1 << std::cos(mx->beta), -kI * std::sin(mx->beta),
          -kI * std::sin(mx->beta), std::cos(mx->beta);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) m = kron(m1, m);
    return m;
  }
  if (const auto* sr = std::get_if<SingleQubitRotation>(&layer)) {
    const char axis = sr->axis == PauliAxis::X ? 'X' : sr->axis == PauliAxis::Y ? 'Y' : 'Z';
    const Eigen::Matrix2cd rot =
        std::cos(sr->angle / 2) * pauli('I') - kI * std::sin(sr->angle / 2) * pauli(axis);
    return embed_single_qubit(rot, sr->qubit, n_qubits);
  }
  const auto& ps = std::get<PauliStringRotation>(layer);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) p = kron(pauli(ps.paulis[q]), p);
  return std::cos(ps.angle / 2) * Eigen::MatrixXcd::Identity(dim, dim) -
         kI * std::sin(ps.angle / 2) * p;
}

Eigen::MatrixXcd dense_circuit_matrix(const CircuitDescription& circuit, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& layer : circuit) m = dense_layer_matrix(layer, n_qubits) * m;
  return m;
}

double single_edge_energy(double gamma, double beta) {
  return -0.5 - 0.5 * std::sin(4 * beta) * std::sin(gamma);
}

Eigen::Vector2d single_edge_gradient(double gamma, double beta) {
  return {-0.5 * std::sin(4 * beta) * std::cos(gamma),
          -2.0 * std::cos(4 * beta) * std::sin(gamma)};
}

double max_cut_by_partition_search(const Graph& g) {
  double best = 0.0;
  const std::uint64_t count = std::uint64_t{1} << g.n_vertices;
  for (std::uint64_t x = 0; x < count; ++x) {
    double cut = 0.0;
    for (const auto& e : g.edges) {
      if (((x >> e.u) & 1U) != ((x >> e.v) & 1U)) cut += e.weight;
    }
    best = std::max(best, cut);
  }
  return best;
}

namespace {

double rayleigh(const Eigen::Matrix2cd& E, const Eigen::Matrix2cd& H, double theta, double phi,
                double* denominator = nullptr) {
  const Eigen::Vector2cd d(std::cos(theta), std::sin(theta) * std::exp(kI * phi));
  const double den = std::real(Complex(d.adjoint() * E * d));
  if (denominator) *denominator = den;
  if (den < 1e-12) return std::numeric_limits<double>::infinity();
  return std::real(Complex(d.adjoint() * H * d)) / den;
}

}  // namespace

ConstrainedMin constrained_sweep_min(const Eigen::Matrix2cd& E, const Eigen::Matrix2cd& H) {
  // Directions up to global phase: d = (cosθ, sinθ e^{iφ}), θ ∈ [0, π/2].
  double best_val = std::numeric_limits<double>::infinity();
  double best_theta = 0.0, best_phi = 0.0;
  const int nt = 181, np = 270;
  for (int i = 0; i < nt; ++i) {
    const double theta = (kPi / 2) * i / (nt - 1);
    for (int j = 0; j < np; ++j) {
      const double phi = 2 * kPi * j / np;
      const double val = rayleigh(E, H, theta, phi);
      if (val < best_val) {
        best_val = val;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  double dt = (kPi / 2) / (nt - 1), dp = 2 * kPi / np;
  for (int round = 0; round < 8; ++round) {
    const double t0 = best_theta, p0 = best_phi;
    for (int i = -16; i <= 16; ++i) {
      const double theta = std::clamp(t0 + dt * i / 8.0, 0.0, kPi / 2);
      for (int j = -16; j <= 16; ++j) {
        const double phi = p0 + dp * j / 8.0;
        const double val = rayleigh(E, H, theta, phi);
        if (val < best_val) {
          best_val = val;
          best_theta = theta;
          best_phi = phi;
        }
      }
    }
    dt /= 8.0;
    dp /= 8.0;
  }
  ConstrainedMin out;
  double den = 0.0;
  out.lambda = rayleigh(E, H, best_theta, best_phi, &den);
  const Eigen::Vector2cd d(std::cos(best_theta), std::sin(best_theta) * std::exp(kI * best_phi));
  out.alpha = d / std::sqrt(den);
  return out;
}

double pencil_min_eigenvalue(const Eigen::Matrix2cd& E, const Eigen::Matrix2cd& H) {
  const double a = std::real(E(0, 0) * E(1, 1)) - std::norm(E(0, 1));
  const double b = -(std::real(H(0, 0) * E(1, 1)) + std::real(H(1, 1) * E(0, 0)) -
                     2 * std::real(H(0, 1) * std::conj(E(0, 1))));
  const double c = std::real(H(0, 0) * H(1, 1)) - std::norm(H(0, 1));
  const double disc = std::sqrt(b * b - 4 * a * c);
  return (-b - disc) / (2 * a);
}

}  // namespace qjump::oracle
