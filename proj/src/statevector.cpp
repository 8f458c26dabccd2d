#include "qjump/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "qjump/errors.hpp"
#include "qjump/rng.hpp"

namespace qjump {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw CapacityError("qubit count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
  }
}

// exp(−iβX) 2x2 sweep over every qubit.
void apply_mixer_x(Eigen::VectorXcd& a, int n, double beta) {
  const std::int64_t dim = std::int64_t{1} << n;
  const double c = std::cos(beta);
  const Complex ms(0.0, -std::sin(beta));
  for (int q = 0; q < n; ++q) {
    const std::int64_t bit = std::int64_t{1} << q;
    for (std::int64_t x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const Complex a0 = a[x];
      const Complex a1 = a[x | bit];
      a[x] = c * a0 + ms * a1;
      a[x | bit] = ms * a0 + c * a1;
    }
  }
}

void apply_single_qubit(Eigen::VectorXcd& a, int n, const SingleQubitRotation& r) {
  if (r.qubit < 0 || r.qubit >= n) {
    throw DescriptorError("rotation qubit " + std::to_string(r.qubit) + " out of range for " +
                          std::to_string(n) + " qubits");
  }
  if (!std::isfinite(r.angle)) throw DescriptorError("rotation angle is not finite");
  const double c = std::cos(r.angle / 2);
  const double s = std::sin(r.angle / 2);
  Complex m00, m01, m10, m11;
  switch (r.axis) {
    case PauliAxis::X:
      m00 = c; m01 = Complex(0, -s); m10 = Complex(0, -s); m11 = c;
      break;
    case PauliAxis::Y:
      m00 = c; m01 = -s; m10 = s; m11 = c;
      break;
    case PauliAxis::Z:
      m00 = Complex(c, -s); m01 = 0; m10 = 0; m11 = Complex(c, s);
      break;
  }
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t bit = std::int64_t{1} << r.qubit;
  for (std::int64_t x = 0; x < dim; ++x) {
    if (x & bit) continue;
    const Complex a0 = a[x];
    const Complex a1 = a[x | bit];
    a[x] = m00 * a0 + m01 * a1;
    a[x | bit] = m10 * a0 + m11 * a1;
  }
}

// Phase picked up by basis state y under the Pauli string (the flip part is
// handled by the caller via `mask`).
Complex pauli_string_factor(const std::string& paulis, std::uint64_t y) {
  Complex f(1.0, 0.0);
  for (std::size_t q = 0; q < paulis.size(); ++q) {
    const bool set = (y >> q) & 1U;
    switch (paulis[q]) {
      case 'I':
      case 'X':
        break;
      case 'Y':
        f *= set ? Complex(0, -1) : Complex(0, 1);
        break;
      case 'Z':
        if (set) f = -f;
        break;
      default:
        throw DescriptorError(std::string("invalid Pauli character '") + paulis[q] + "'");
    }
  }
  return f;
}

void apply_pauli_string(Eigen::VectorXcd& a, int n, const PauliStringRotation& r) {
  if (static_cast<int>(r.paulis.size()) != n) {
    throw DescriptorError("Pauli string length " + std::to_string(r.paulis.size()) +
                          " does not match qubit count " + std::to_string(n));
  }
  if (!std::isfinite(r.angle)) throw DescriptorError("rotation angle is not finite");
  std::uint64_t mask = 0;
  for (int q = 0; q < n; ++q) {
    const char p = r.paulis[q];
    if (p == 'X' || p == 'Y') mask |= std::uint64_t{1} << q;
    else if (p != 'I' && p != 'Z') {
      throw DescriptorError(std::string("invalid Pauli character '") + p + "'");
    }
  }
  const double c = std::cos(r.angle / 2);
  const Complex ms(0.0, -std::sin(r.angle / 2));
  const std::int64_t dim = std::int64_t{1} << n;
  if (mask == 0) {
    // Pure I/Z string: diagonal action, factor ±1.
    for (std::int64_t x = 0; x < dim; ++x) {
      a[x] = (c + ms * pauli_string_factor(r.paulis, x)) * a[x];
    }
    return;
  }
  for (std::int64_t x = 0; x < dim; ++x) {
    const std::int64_t y = x ^ static_cast<std::int64_t>(mask);
    if (y < x) continue;
    const Complex ax = a[x];
    const Complex ay = a[y];
    a[x] = c * ax + ms * pauli_string_factor(r.paulis, y) * ay;
    a[y] = c * ay + ms * pauli_string_factor(r.paulis, x) * ax;
  }
}

}  // namespace

State uniform_superposition(int n_qubits) {
  check_qubit_count(n_qubits);
  State s;
  s.n_qubits = n_qubits;
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  s.amplitudes = Eigen::VectorXcd::Constant(dim, Complex(std::pow(2.0, -n_qubits / 2.0), 0.0));
  return s;
}

State basis_state(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw ShapeError("basis index " + std::to_string(index) + " out of range");
  }
  State s;
  s.n_qubits = n_qubits;
  s.amplitudes = Eigen::VectorXcd::Zero(dim);
  s.amplitudes[static_cast<std::int64_t>(index)] = Complex(1.0, 0.0);
  return s;
}

State SubnormalizedState::normalized() const {
  const double nrm = std::sqrt(norm_sq);
  if (nrm < 1e-8) {
    throw DegenerateJumpError("post-selected branch has vanishing norm");
  }
  State s;
  s.n_qubits = n_qubits;
  s.amplitudes = amplitudes / nrm;
  return s;
}

void apply_layer_inplace(Eigen::VectorXcd& amplitudes, int n_qubits, const LayerDescriptor& layer) {
  check_qubit_count(n_qubits);
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (amplitudes.size() != dim) {
    throw ShapeError("amplitude vector length does not match qubit count");
  }
  if (const auto* cp = std::get_if<CostPhase>(&layer)) {
    if (!cp->hamiltonian) throw DescriptorError("CostPhase without a Hamiltonian");
    if (cp->hamiltonian->n_qubits != n_qubits) {
      throw ShapeError("CostPhase Hamiltonian acts on " +
                       std::to_string(cp->hamiltonian->n_qubits) + " qubits, state has " +
                       std::to_string(n_qubits));
    }
    if (!std::isfinite(cp->gamma)) throw DescriptorError("CostPhase angle is not finite");
    const Eigen::VectorXd& e = cp->hamiltonian->energies;
    for (std::int64_t x = 0; x < dim; ++x) {
      amplitudes[x] *= Complex(std::cos(cp->gamma * e[x]), -std::sin(cp->gamma * e[x]));
    }
  } else if (const auto* mx = std::get_if<MixerX>(&layer)) {
    if (!std::isfinite(mx->beta)) throw DescriptorError("MixerX angle is not finite");
    apply_mixer_x(amplitudes, n_qubits, mx->beta);
  } else if (const auto* sr = std::get_if<SingleQubitRotation>(&layer)) {
    apply_single_qubit(amplitudes, n_qubits, *sr);
  } else {
    apply_pauli_string(amplitudes, n_qubits, std::get<PauliStringRotation>(layer));
  }
}

State apply_layer(const State& state, const LayerDescriptor& layer) {
  State out = state;
  apply_layer_inplace(out.amplitudes, out.n_qubits, layer);
  return out;
}

State apply_circuit(const State& state, const CircuitDescription& circuit) {
  State out = state;
  for (const auto& layer : circuit) {
    apply_layer_inplace(out.amplitudes, out.n_qubits, layer);
  }
  return out;
}

Complex inner_product(const State& a, const State& b) {
  if (a.n_qubits != b.n_qubits) {
    throw ShapeError("inner product between " + std::to_string(a.n_qubits) + "- and " +
                     std::to_string(b.n_qubits) + "-qubit states");
  }
  return a.amplitudes.dot(b.amplitudes);  // Eigen conjugates the left factor
}

double expectation_diagonal(const State& state, const DiagonalHamiltonian& h) {
  if (state.n_qubits != h.n_qubits) {
    throw ShapeError("state and Hamiltonian qubit counts differ");
  }
  double acc = 0.0;
  for (std::int64_t x = 0; x < state.dim(); ++x) {
    acc += std::norm(state.amplitudes[x]) * h.energies[x];
  }
  return acc;
}

std::vector<std::uint64_t> sample_bitstrings(const State& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw ConfigError("shots must be >= 1");
  const std::int64_t dim = state.dim();
  std::vector<double> cdf(static_cast<std::size_t>(dim));
  double acc = 0.0;
  for (std::int64_t x = 0; x < dim; ++x) {
    acc += std::norm(state.amplitudes[x]);
    cdf[static_cast<std::size_t>(x)] = acc;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> samples(static_cast<std::size_t>(shots));
  for (auto& s : samples) {
    const double u = uniform_double(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    s = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), dim - 1));
  }
  return samples;
}

}  // namespace qjump
