#pragma once

// Independent reference computations for the test suites. Everything here is
// derived from first principles (Kronecker products, closed forms, dense
// sweeps) rather than from the library's own fast paths, so agreement is
// meaningful.

#include <Eigen/Dense>

#include "qjump/problem.hpp"
#include "qjump/statevector.hpp"

namespace qjump::oracle {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Full 2^n x 2^n unitary of a layer, assembled from 2x2 blocks / explicit
// diagonals with qubit 0 as the least significant bit.
Eigen::MatrixXcd dense_layer_matrix(const LayerDescriptor& layer, int n_qubits);
Eigen::MatrixXcd dense_circuit_matrix(const CircuitDescription& circuit, int n_qubits);

// Single unit edge, depth 1: energy and its analytic gradient.
double single_edge_energy(double gamma, double beta);
Eigen::Vector2d single_edge_gradient(double gamma, double beta);

// Max cut weight by direct partition enumeration over the edge list.
double max_cut_by_partition_search(const Graph& g);

// Minimum of d†Hd subject to d†Ed = 1 for 2x2 Hermitian pencils: dense scan
// of the (|d1|/|d2|, relative phase) manifold followed by local refinement.
struct ConstrainedMin {
  double lambda = 0.0;
  Eigen::Vector2cd alpha;  // scaled to alpha†E alpha = 1
};
ConstrainedMin constrained_sweep_min(const Eigen::Matrix2cd& E, const Eigen::Matrix2cd& H);

// Smaller root of det(H − λE) = 0 for 2x2 Hermitian pencils with E > 0.
double pencil_min_eigenvalue(const Eigen::Matrix2cd& E, const Eigen::Matrix2cd& H);

}  // namespace qjump::oracle
