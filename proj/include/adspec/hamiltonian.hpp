#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "adspec/sat.hpp"

namespace adspec {

/// Largest qubit count for which the dense N x N form may be materialized.
inline constexpr int kDenseCapQubits = 14;

/// The diagonal of the final Hamiltonian: entry i = (4/alpha) * violated_count
/// of basis state i. For a single-solution instance exactly one entry is zero,
/// at the solution index, and the entries sum to N*n/2.
struct DiagonalFinal {
  int n = 0;
  double alpha = 0.0;
  std::vector<double> entries;
};

DiagonalFinal build_h1(const SatInstance& instance);

/// The interpolated Hamiltonian H(t): diagonal (1-t)*n/2 + t*(final entry),
/// plus a uniform coupling -(1-t)/2 between every pair of basis states at
/// Hamming distance 1. Real symmetric with trace N*n/2 for every t.
class SymmetricOperator {
public:
  SymmetricOperator(int n, double t, std::vector<double> diag, double coupling);

  int qubits() const { return n_; }
  std::size_t dim() const { return diag_.size(); }
  double t() const { return t_; }
  double coupling() const { return coupling_; }
  std::span<const double> diag() const { return diag_; }

  /// Matrix-free product H(t) v in O(N*n) via bit-flip neighbor enumeration.
  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const;

  /// Densify on demand; throws std::domain_error above the dense cap.
  Eigen::MatrixXd dense() const;

  double trace() const;

private:
  int n_;
  double t_;
  std::vector<double> diag_;
  double coupling_;
};

/// H(t) = (1-t) H(0) + t H(1). Throws std::domain_error for t outside [0, 1].
SymmetricOperator build_ht(const SatInstance& instance, double t);
SymmetricOperator build_ht(const DiagonalFinal& h1, double t);

} // namespace adspec
