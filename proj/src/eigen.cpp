#include "adspec/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "adspec/errors.hpp"
#include "adspec/rng.hpp"

namespace adspec {
namespace {

void fix_column_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, c));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

/// Solve (T - theta I) x = rhs for symmetric tridiagonal T (diag a, offdiag b)
/// by Gaussian elimination with partial pivoting. Near-singular systems are
/// the intended use (inverse iteration), so zero pivots are nudged.
Eigen::VectorXd shifted_tridiag_solve(const std::vector<double>& a, const std::vector<double>& b,
                                      int m, double theta, Eigen::VectorXd rhs) {
  std::vector<double> dia(static_cast<std::size_t>(m));
  std::vector<double> sup(m > 1 ? static_cast<std::size_t>(m - 1) : 0, 0.0);
  std::vector<double> sup2(m > 2 ? static_cast<std::size_t>(m - 2) : 0, 0.0);
  for (int i = 0; i < m; ++i) dia[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] - theta;
  for (int i = 0; i + 1 < m; ++i) sup[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)];
  const double tiny = 1e-300;
  for (int i = 0; i + 1 < m; ++i) {
    const double s = b[static_cast<std::size_t>(i)]; // T(i+1, i), untouched so far
    if (std::abs(dia[i]) >= std::abs(s)) {
      if (std::abs(dia[i]) < tiny) dia[i] = (dia[i] < 0.0 ? -tiny : tiny);
      const double f = s / dia[i];
      dia[i + 1] -= f * sup[i];
      if (i + 2 < m) sup[i + 1] -= f * sup2[i];
      rhs[i + 1] -= f * rhs[i];
    } else {
      const double t_dia = dia[i], t_sup = sup[i], t_rhs = rhs[i];
      const double t_sup2 = (i + 2 < m) ? sup2[i] : 0.0;
      dia[i] = s;
      sup[i] = dia[i + 1];
      if (i + 2 < m) sup2[i] = sup[i + 1];
      rhs[i] = rhs[i + 1];
      const double f = t_dia / dia[i];
      dia[i + 1] = t_sup - f * sup[i];
      if (i + 2 < m) sup[i + 1] = t_sup2 - f * sup2[i];
      rhs[i + 1] = t_rhs - f * rhs[i];
    }
  }
  if (std::abs(dia[m - 1]) < tiny) dia[m - 1] = (dia[m - 1] < 0.0 ? -tiny : tiny);
  Eigen::VectorXd x(m);
  x[m - 1] = rhs[m - 1] / dia[m - 1];
  if (m > 1) x[m - 2] = (rhs[m - 2] - sup[m - 2] * x[m - 1]) / dia[m - 2];
  for (int i = m - 3; i >= 0; --i)
    x[i] = (rhs[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / dia[i];
  return x;
}

/// Eigenvector of T for Ritz value theta by inverse iteration, orthogonalized
/// against previously extracted vectors of (near-)equal Ritz values.
Eigen::VectorXd tridiag_ritz_vector(const std::vector<double>& a, const std::vector<double>& b,
                                    int m, double theta,
                                    const std::vector<std::pair<double, Eigen::VectorXd>>& prev) {
  Eigen::VectorXd s = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  const double cluster_tol = 1e-6 * std::max(1.0, std::abs(theta));
  for (int iter = 0; iter < 3; ++iter) {
    s = shifted_tridiag_solve(a, b, m, theta, s);
    for (const auto& [th, v] : prev)
      if (std::abs(th - theta) < cluster_tol) s -= v.dot(s) * v;
    const double norm = s.norm();
    if (norm < 1e-280) {
      s = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
      continue;
    }
    s /= norm;
  }
  return s;
}

Eigen::VectorXd tridiag_eigenvalues(const std::vector<double>& a, const std::vector<double>& b,
                                    int m) {
  Eigen::VectorXd dia = Eigen::Map<const Eigen::VectorXd>(a.data(), m);
  Eigen::VectorXd sub =
      m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(b.data(), m - 1))
            : Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(dia, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw ComputeError("tridiagonal eigenvalue iteration did not converge");
  return es.eigenvalues();
}

} // namespace

EigenSystem eig_full(const SymmetricOperator& op) {
  const Eigen::MatrixXd h = op.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw ComputeError("dense eigensolver exceeded its iteration budget at N=" +
                       std::to_string(h.rows()));
  EigenSystem sys;
  sys.values = es.eigenvalues();
  sys.vectors = es.eigenvectors();
  sys.t = op.t();
  fix_column_signs(sys.vectors);
  return sys;
}

EigenSystem eig_lowest_dense(const SymmetricOperator& op, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > op.dim())
    throw std::invalid_argument("k must lie in [1, N]");
  EigenSystem full = eig_full(op);
  EigenSystem sys;
  sys.values = full.values.head(k);
  sys.vectors = full.vectors.leftCols(k);
  sys.t = full.t;
  return sys;
}

EigenSystem eig_lowest_lanczos(const SymmetricOperator& op, int k,
                               const Eigen::MatrixXd* warm_start) {
  const std::size_t dim = op.dim();
  const auto N = static_cast<Eigen::Index>(dim);
  if (k < 1 || static_cast<std::size_t>(k) >= dim || k > 64)
    throw std::invalid_argument("lanczos route requires 1 <= k < N, k <= 64");
  if (op.qubits() > kLanczosCapQubits)
    throw std::invalid_argument("matrix-free solves capped at n <= " +
                                std::to_string(kLanczosCapQubits));

  // Basis storage is the memory bound: cap columns so the block stays modest.
  const int m_cap = static_cast<int>(std::min<std::size_t>(
      dim, std::max<std::size_t>(64, (std::size_t{1} << 27) / dim)));
  const int max_cycles = 40;
  const long long apply_budget = 200000;

  Eigen::MatrixXd basis(N, m_cap);
  Eigen::MatrixXd locked(N, k);
  Eigen::VectorXd locked_vals(k);
  int nlocked = 0;
  long long applies = 0;
  double theta_scale = 1.0; // grows toward max |Ritz value|; <= |E_max|

  Rng rng(0x243f6a8885a308d3ull);
  const auto random_vector = [&] {
    Eigen::VectorXd v(N);
    for (Eigen::Index i = 0; i < N; ++i) v[i] = rng.normal();
    return v;
  };
  const auto orth_locked = [&](Eigen::VectorXd& v) {
    if (nlocked == 0) return;
    const auto l = locked.leftCols(nlocked);
    v -= l * (l.transpose() * v);
    v -= l * (l.transpose() * v);
  };

  Eigen::VectorXd restart; // cross-cycle start hint
  Eigen::VectorXd w(N);
  std::vector<double> a, b; // running tridiagonal coefficients

  for (int cycle = 0; cycle < max_cycles && nlocked < k; ++cycle) {
    Eigen::VectorXd v;
    if (restart.size() == N)
      v = restart;
    else if (warm_start && nlocked < warm_start->cols() && warm_start->rows() == N)
      v = warm_start->col(nlocked);
    else
      v = random_vector();
    restart.resize(0);
    orth_locked(v);
    double vnorm = v.norm();
    while (vnorm < 1e-8) {
      v = random_vector();
      orth_locked(v);
      vnorm = v.norm();
    }
    basis.col(0) = v / vnorm;

    a.clear();
    b.clear();

    for (int j = 0; j < m_cap; ++j) {
      op.apply(basis.col(j), w);
      ++applies;
      double alpha = basis.col(j).dot(w);
      w -= alpha * basis.col(j);
      if (j > 0) w -= b[static_cast<std::size_t>(j - 1)] * basis.col(j - 1);
      // Two-pass full reorthogonalization against the basis and locked block.
      for (int pass = 0; pass < 2; ++pass) {
        const auto bl = basis.leftCols(j + 1);
        const Eigen::VectorXd proj = bl.transpose() * w;
        w -= bl * proj;
        if (pass == 0) alpha += proj[j];
        if (nlocked > 0) {
          const auto l = locked.leftCols(nlocked);
          w -= l * (l.transpose() * w);
        }
      }
      a.push_back(alpha);
      const double beta = w.norm();
      const int m = j + 1;

      const bool at_cap = (m == m_cap);
      const bool breakdown = beta < 1e-12 * std::max(1.0, theta_scale);
      const bool checkpoint = breakdown || at_cap || (m >= 2 * (k - nlocked) && m % 16 == 0);
      if (checkpoint) {
        const Eigen::VectorXd thetas = tridiag_eigenvalues(a, b, m);
        theta_scale = std::max({theta_scale, std::abs(thetas[0]), std::abs(thetas[m - 1])});
        const double tol_abs = kResidualTol * std::max(1.0, theta_scale);
        const int needed = k - nlocked;
        const int avail = std::min(needed, m);
        std::vector<std::pair<double, Eigen::VectorXd>> extracted; // (theta, T-vector)
        int certified = 0;
        for (int i = 0; i < avail; ++i) {
          Eigen::VectorXd s = tridiag_ritz_vector(a, b, m, thetas[i], extracted);
          const double bound = breakdown ? 0.0 : beta * std::abs(s[m - 1]);
          extracted.emplace_back(thetas[i], std::move(s));
          if (bound <= tol_abs) ++certified;
        }
        if (certified == needed || at_cap || breakdown) {
          // Promote tridiagonal vectors to Ritz vectors and verify residuals
          // explicitly; the |beta s_m| bound is only the screening test.
          // Locking stops at the first failure so only a bottom-consecutive
          // run of Ritz pairs is ever accepted.
          int accepted = 0;
          bool collapsed = false;
          Eigen::VectorXd next_hint;
          for (int i = 0; i < static_cast<int>(extracted.size()) && accepted == i; ++i) {
            Eigen::VectorXd y = basis.leftCols(m) * extracted[static_cast<std::size_t>(i)].second;
            orth_locked(y);
            const double ynorm = y.norm();
            if (ynorm < 0.5) { // fell into the locked span; basis went stale
              collapsed = true;
              break;
            }
            y /= ynorm;
            op.apply(y, w);
            ++applies;
            const double theta = extracted[static_cast<std::size_t>(i)].first;
            const double resid = (w - theta * y).norm();
            if (resid <= tol_abs) {
              locked.col(nlocked) = y;
              locked_vals[nlocked] = theta;
              ++nlocked;
              ++accepted;
            } else {
              next_hint = y;
            }
          }
          if (nlocked >= k) break;
          // Anything locked makes the current basis stale (it still spans the
          // locked directions), so deflate and start a fresh cycle.
          if (accepted > 0 || collapsed || at_cap || breakdown) {
            if (next_hint.size() == N) restart = next_hint;
            break;
          }
        }
      }
      if (breakdown) break;
      if (j + 1 < m_cap) {
        b.push_back(beta);
        basis.col(j + 1) = w / beta;
      }
    }

    if (applies > apply_budget)
      throw ComputeError("lanczos exceeded its apply budget (" + std::to_string(applies) +
                         " products, " + std::to_string(nlocked) + "/" + std::to_string(k) +
                         " pairs converged)");
  }

  if (nlocked < k)
    throw ComputeError("lanczos converged only " + std::to_string(nlocked) + " of " +
                       std::to_string(k) + " pairs in " + std::to_string(max_cycles) + " cycles");

  // Deflated restarts can discover eigenvalues out of order; sort ascending.
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return locked_vals[x] < locked_vals[y]; });
  EigenSystem sys;
  sys.values.resize(k);
  sys.vectors.resize(N, k);
  for (int i = 0; i < k; ++i) {
    sys.values[i] = locked_vals[order[static_cast<std::size_t>(i)]];
    sys.vectors.col(i) = locked.col(order[static_cast<std::size_t>(i)]);
  }
  sys.t = op.t();
  fix_column_signs(sys.vectors);
  return sys;
}

EigenSystem eig_lowest(const SymmetricOperator& op, int k) {
  const std::size_t dim = op.dim();
  if (k < 1 || static_cast<std::size_t>(k) > dim)
    throw std::invalid_argument("k must lie in [1, N]");
  const bool dense_ok = op.qubits() <= kDenseCapQubits;
  if (dim < 512 || k > 8 || static_cast<std::size_t>(k) >= dim) {
    if (dense_ok) return eig_lowest_dense(op, k);
    throw std::invalid_argument("k > 8 is unsupported above the dense cap");
  }
  try {
    return eig_lowest_lanczos(op, k);
  } catch (const ComputeError&) {
    // Tight clusters (t near the endpoints) can stall the iteration; the
    // dense route is slow but unconditional.
    if (dense_ok) return eig_lowest_dense(op, k);
    throw;
  }
}

} // namespace adspec
