#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

namespace adspec {

/// A pure state of n qubits with real amplitudes, unit norm. Bit k of the
/// basis index (least significant = qubit 0) is the value of qubit k.
struct StateVector {
  int n = 0;
  Eigen::VectorXd amplitudes;
};

/// Partial trace over the complement of `kept`; positive semidefinite with
/// unit trace. Reduced index bit p corresponds to kept[p].
/// Throws std::invalid_argument on duplicate or out-of-range indices.
Eigen::MatrixXd reduce(const StateVector& state, std::span<const int> kept);

/// Smallest eigenvalue of the partial transpose (taken on the lower-index
/// qubit) of the two-qubit reduced state of qubits j and k. Negative values
/// certify entanglement of the pair. Throws std::invalid_argument when j == k.
double ppt_min_eig(const StateVector& state, int j, int k);

/// Mean of ppt_min_eig over all n(n-1)/2 unordered qubit pairs.
double ppt_avg(const StateVector& state);

/// Von Neumann entropy, base-2 logarithm, of the reduced state of the first
/// n/2 qubits (the low bits). Eigenvalues below 1e-14 contribute zero.
/// Requires even n.
double entropy_half(const StateVector& state);

/// Eigenvalues of the half-cut reduced density matrix, sorted descending;
/// their square roots are the Schmidt coefficients of the n/2 + n/2 split.
Eigen::VectorXd schmidt_spectrum(const StateVector& state);

/// Independent standard Gaussian amplitudes, normalized. Deterministic per seed.
StateVector random_state(int n, std::uint64_t seed);

} // namespace adspec
