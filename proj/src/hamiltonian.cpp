#include "adspec/hamiltonian.hpp"

#include <stdexcept>
#include <utility>

#include "adspec/kernels.hpp"

namespace adspec {

DiagonalFinal build_h1(const SatInstance& instance) {
  DiagonalFinal h1;
  h1.n = instance.n;
  h1.alpha = instance.alpha;
  const double prefactor = 4.0 / instance.alpha;
  const auto violated = kernels::violated_table(instance.n, instance.clauses);
  h1.entries.resize(violated.size());
  for (std::size_t i = 0; i < violated.size(); ++i)
    h1.entries[i] = prefactor * violated[i];
  return h1;
}

SymmetricOperator::SymmetricOperator(int n, double t, std::vector<double> diag, double coupling)
    : n_(n), t_(t), diag_(std::move(diag)), coupling_(coupling) {
  if (n_ < 1 || diag_.size() != (std::size_t{1} << n_))
    throw std::invalid_argument("diagonal length must be 2^n");
}

void SymmetricOperator::apply(std::span<const double> v, std::span<double> out) const {
  if (v.size() != dim() || out.size() != dim())
    throw std::invalid_argument("apply: vector length must be 2^n");
  kernels::apply_diag_hamming1(diag_, coupling_, v, out);
}

std::vector<double> SymmetricOperator::apply(std::span<const double> v) const {
  std::vector<double> out(v.size());
  apply(v, std::span<double>(out));
  return out;
}

void SymmetricOperator::apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  out.resize(v.size());
  apply(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
        std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
}

Eigen::MatrixXd SymmetricOperator::dense() const {
  if (n_ > kDenseCapQubits)
    throw std::domain_error("dense form capped at n <= " + std::to_string(kDenseCapQubits));
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    h(i, i) = diag_[static_cast<std::size_t>(i)];
    for (int k = 0; k < n_; ++k) {
      const Eigen::Index j = i ^ (Eigen::Index{1} << k);
      h(i, j) = coupling_;
    }
  }
  return h;
}

double SymmetricOperator::trace() const {
  double sum = 0.0;
  for (double d : diag_) sum += d;
  return sum;
}

SymmetricOperator build_ht(const DiagonalFinal& h1, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0, 1]");
  const double base = (1.0 - t) * h1.n / 2.0;
  std::vector<double> diag(h1.entries.size());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = base + t * h1.entries[i];
  return SymmetricOperator(h1.n, t, std::move(diag), -(1.0 - t) / 2.0);
}

SymmetricOperator build_ht(const SatInstance& instance, double t) {
  return build_ht(build_h1(instance), t);
}

} // namespace adspec
