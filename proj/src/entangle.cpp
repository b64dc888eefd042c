#include "adspec/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "adspec/kernels.hpp"
#include "adspec/rng.hpp"
#include "adspec/sat.hpp"

namespace adspec {
namespace {

constexpr double kEntropyFloor = 1e-14;

std::span<const double> amps(const StateVector& state) {
  if (state.n < 1 || state.amplitudes.size() != (Eigen::Index{1} << state.n))
    throw std::invalid_argument("state amplitudes must have length 2^n");
  return {state.amplitudes.data(), static_cast<std::size_t>(state.amplitudes.size())};
}

Eigen::MatrixXd half_cut(const StateVector& state) {
  if (state.n % 2 != 0) throw std::invalid_argument("half cut requires even n");
  std::vector<int> kept(static_cast<std::size_t>(state.n / 2));
  for (int q = 0; q < state.n / 2; ++q) kept[static_cast<std::size_t>(q)] = q;
  return kernels::partial_trace(amps(state), state.n, kept);
}

} // namespace

Eigen::MatrixXd reduce(const StateVector& state, std::span<const int> kept) {
  return kernels::partial_trace(amps(state), state.n, kept);
}

double ppt_min_eig(const StateVector& state, int j, int k) {
  if (j == k) throw std::invalid_argument("pair qubits must differ");
  const int lo = std::min(j, k);
  const int hi = std::max(j, k);
  const int kept[2] = {lo, hi};
  const Eigen::MatrixXd rho = kernels::partial_trace(amps(state), state.n, kept);
  // Partial transpose on the lower-index qubit, which is reduced index bit 0.
  Eigen::Matrix4d pt;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a0 = 0; a0 < 2; ++a0)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b0 = 0; b0 < 2; ++b0)
          pt(a0 + 2 * a1, b0 + 2 * b1) = rho(b0 + 2 * a1, a0 + 2 * b1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double ppt_avg(const StateVector& state) {
  if (state.n < 2) throw std::invalid_argument("pair average requires n >= 2");
  double sum = 0.0;
  for (int j = 0; j < state.n; ++j)
    for (int k = j + 1; k < state.n; ++k) sum += ppt_min_eig(state, j, k);
  return sum * 2.0 / (static_cast<double>(state.n) * (state.n - 1));
}

double entropy_half(const StateVector& state) {
  const Eigen::MatrixXd rho = half_cut(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()[i];
    if (lambda > kEntropyFloor) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

Eigen::VectorXd schmidt_spectrum(const StateVector& state) {
  const Eigen::MatrixXd rho = half_cut(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd weights = es.eigenvalues().reverse();
  return weights;
}

StateVector random_state(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxEnumerationVars)
    throw std::invalid_argument("random state requires 1 <= n <= " +
                                std::to_string(kMaxEnumerationVars));
  StateVector state;
  state.n = n;
  state.amplitudes.resize(Eigen::Index{1} << n);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) state.amplitudes[i] = rng.normal();
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

} // namespace adspec
