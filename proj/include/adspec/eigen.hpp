#pragma once

#include <Eigen/Dense>

#include "adspec/hamiltonian.hpp"

namespace adspec {

/// Ascending eigenvalues with matching orthonormal real eigenvectors
/// (columns). Every retained pair satisfies
///   |H v_i - E_i v_i|_2 <= 1e-9 * max(1, |E_max|).
/// Eigenvector signs are fixed by making the largest-magnitude component
/// positive, so decompositions are reproducible.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  double t = 0.0;

  int count() const { return static_cast<int>(values.size()); }
};

inline constexpr double kResidualTol = 1e-9;

/// Lanczos keeps up to a few hundred basis vectors; past 20 qubits the basis
/// alone would need gigabytes, so matrix-free solves refuse above this.
inline constexpr int kLanczosCapQubits = 20;

/// All N eigenpairs of the densified operator.
EigenSystem eig_full(const SymmetricOperator& op);

/// The k lowest eigenpairs. Small problems are solved densely and truncated;
/// larger ones use a matrix-free Lanczos iteration with full
/// reorthogonalization and deflation. Throws ComputeError instead of
/// returning unconverged results.
EigenSystem eig_lowest(const SymmetricOperator& op, int k);

/// The two routes behind eig_lowest, exposed so tests can check their
/// agreement. warm_start columns seed the search per target index (column 0
/// for the ground state and so on), e.g. eigenvectors from a nearby t.
EigenSystem eig_lowest_dense(const SymmetricOperator& op, int k);
EigenSystem eig_lowest_lanczos(const SymmetricOperator& op, int k,
                               const Eigen::MatrixXd* warm_start = nullptr);

} // namespace adspec
