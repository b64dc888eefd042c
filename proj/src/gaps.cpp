#include "adspec/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adspec/eigen.hpp"
#include "adspec/errors.hpp"

namespace adspec {
namespace {

void check_interior(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("gap requires 0 < t < 1, the endpoints are degenerate");
}

/// One gap evaluation; warm columns seed the iterative route, vectors_out
/// returns the two eigenvectors for warm-starting the next evaluation.
GapPoint eval_gap(const DiagonalFinal& h1, double t, const Eigen::MatrixXd* warm,
                  Eigen::MatrixXd* vectors_out) {
  check_interior(t);
  const SymmetricOperator op = build_ht(h1, t);
  EigenSystem sys;
  if (op.dim() >= 512) {
    try {
      sys = eig_lowest_lanczos(op, 2, warm);
    } catch (const ComputeError&) {
      if (op.qubits() > kDenseCapQubits) throw;
      sys = eig_lowest_dense(op, 2);
    }
  } else {
    sys = eig_lowest_dense(op, 2);
  }
  if (vectors_out) *vectors_out = sys.vectors;
  return {sys.values[0], sys.values[1], sys.values[1] - sys.values[0]};
}

double median_of_sorted(const std::vector<double>& sorted) {
  const std::size_t c = sorted.size();
  if (c % 2 == 1) return sorted[c / 2];
  return 0.5 * (sorted[c / 2 - 1] + sorted[c / 2]);
}

} // namespace

GapPoint gap_at(const DiagonalFinal& h1, double t) {
  return eval_gap(h1, t, nullptr, nullptr);
}

GapPoint gap_at(const SatInstance& instance, double t) {
  return gap_at(build_h1(instance), t);
}

GapRecord find_min_gap(const SatInstance& instance, double grid_step, double tol) {
  if (!(grid_step > 0.0 && grid_step <= 0.05))
    throw std::invalid_argument("grid_step must lie in (0, 0.05]");
  if (!(tol > 0.0 && tol <= 1e-4))
    throw std::invalid_argument("tol must lie in (0, 1e-4]");
  const DiagonalFinal h1 = build_h1(instance);

  GapRecord rec;
  rec.seed = instance.seed;
  rec.n = instance.n;
  rec.alpha = instance.alpha;
  rec.grid_step = grid_step;
  rec.tol = tol;
  rec.tries = instance.tries;

  const int last = static_cast<int>(std::floor((1.0 - grid_step) / grid_step + 1e-9));
  if (last < 3) throw std::invalid_argument("grid_step leaves fewer than 3 scan points");
  std::vector<double> ts, deltas;
  ts.reserve(static_cast<std::size_t>(last));
  deltas.reserve(static_cast<std::size_t>(last));
  Eigen::MatrixXd warm, vectors;
  double best_t = 0.0, best_delta = 0.0;
  bool have_best = false;
  const auto record_eval = [&](double t, double delta) {
    ++rec.evaluations;
    if (!have_best || delta < best_delta) {
      best_t = t;
      best_delta = delta;
      have_best = true;
    }
  };

  for (int j = 1; j <= last; ++j) {
    const double t = j * grid_step;
    const GapPoint g = eval_gap(h1, t, warm.size() ? &warm : nullptr, &vectors);
    warm = vectors;
    ts.push_back(t);
    deltas.push_back(g.delta);
    record_eval(t, g.delta);
  }

  std::size_t best_grid = 0;
  for (std::size_t j = 1; j < deltas.size(); ++j)
    if (deltas[j] < deltas[best_grid]) best_grid = j;
  for (std::size_t j = 1; j + 1 < deltas.size(); ++j)
    if (deltas[j] < deltas[j - 1] && deltas[j] <= deltas[j + 1])
      rec.grid_local_minima_t.push_back(ts[j]);
  if (best_grid == 0 || best_grid + 1 == deltas.size())
    throw ComputeError("minimum gap sits at the scan boundary t=" +
                       std::to_string(ts[best_grid]) +
                       "; no interior bracket (gap may be monotone over the grid)");

  // Golden-section refinement inside the bracket around the best grid point.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = ts[best_grid - 1];
  double b = ts[best_grid + 1];
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval_gap(h1, x1, &warm, &vectors).delta;
  warm = vectors;
  record_eval(x1, f1);
  double f2 = eval_gap(h1, x2, &warm, &vectors).delta;
  warm = vectors;
  record_eval(x2, f2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval_gap(h1, x1, &warm, &vectors).delta;
      warm = vectors;
      record_eval(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval_gap(h1, x2, &warm, &vectors).delta;
      warm = vectors;
      record_eval(x2, f2);
    }
  }
  rec.t_min = best_t;
  rec.delta = best_delta;
  return rec;
}

EnsembleGapStats ensemble_stats(std::span<const GapRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("ensemble needs at least 2 records");
  EnsembleGapStats stats;
  stats.n = records[0].n;
  stats.alpha = records[0].alpha;
  stats.count = static_cast<int>(records.size());
  std::vector<double> deltas;
  deltas.reserve(records.size());
  double sum = 0.0;
  for (const GapRecord& r : records) {
    if (r.n != stats.n || r.alpha != stats.alpha)
      throw std::invalid_argument("ensemble mixes (n, alpha) values");
    deltas.push_back(r.delta);
    sum += r.delta;
  }
  stats.mean = sum / static_cast<double>(deltas.size());
  std::vector<double> sorted = deltas;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  stats.median = median_of_sorted(sorted);
  stats.normalized.reserve(deltas.size());
  for (double d : deltas) stats.normalized.push_back(d / stats.mean);
  return stats;
}

ScalingTable scaling_table(std::span<const EnsembleGapStats> per_n) {
  std::set<int> ns;
  for (const EnsembleGapStats& s : per_n)
    if (!ns.insert(s.n).second)
      throw std::invalid_argument("duplicate n in scaling input");
  if (ns.size() < 3) throw std::invalid_argument("scaling table needs at least 3 distinct n");

  ScalingTable table;
  table.reference_rate = 0.5 * std::log(2.0);
  for (const EnsembleGapStats& s : per_n) {
    ScalingRow row;
    row.n = s.n;
    row.count = s.count;
    row.median_over_n = s.median / s.n;
    row.mean_over_n = s.mean / s.n;
    row.min_delta = s.min;
    row.max_delta = s.max;
    row.reference = 0.5 * std::pow(2.0, -0.5 * s.n);
    table.rows.push_back(row);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScalingRow& x, const ScalingRow& y) { return x.n < y.n; });

  double mx = 0.0, my = 0.0;
  for (const ScalingRow& r : table.rows) {
    mx += r.n;
    my += std::log(r.median_over_n);
  }
  mx /= static_cast<double>(table.rows.size());
  my /= static_cast<double>(table.rows.size());
  double sxy = 0.0, sxx = 0.0;
  for (const ScalingRow& r : table.rows) {
    sxy += (r.n - mx) * (std::log(r.median_over_n) - my);
    sxx += (r.n - mx) * (r.n - mx);
  }
  const double slope = sxy / sxx;
  table.rate = -slope;
  table.intercept = my - slope * mx;
  return table;
}

Eigen::MatrixXd probability_flow(const SatInstance& instance, std::span<const double> t_grid) {
  if (instance.n > kDenseCapQubits)
    throw std::invalid_argument("probability flow needs full diagonalization, n <= " +
                                std::to_string(kDenseCapQubits));
  for (double t : t_grid)
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("flow grid values must lie in (0, 1]");
  const DiagonalFinal h1 = build_h1(instance);
  const auto N = static_cast<Eigen::Index>(h1.entries.size());
  const auto T = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd p(N + 1, T);
  const long long cols = T;
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < cols; ++c) {
    const EigenSystem sys = eig_full(build_ht(h1, t_grid[static_cast<std::size_t>(c)]));
    const auto col = static_cast<Eigen::Index>(c);
    p(N, col) = 0.0;
    for (Eigen::Index i = N - 1; i >= 0; --i) {
      const double o = sys.vectors(static_cast<Eigen::Index>(instance.solution), i);
      p(i, col) = p(i + 1, col) + o * o;
    }
  }
  return p;
}

std::vector<std::vector<int>> flow_isolines(const Eigen::MatrixXd& p,
                                            std::span<const double> levels) {
  for (double level : levels)
    if (level < 0.0) throw std::invalid_argument("isoline levels must be >= 0");
  std::vector<std::vector<int>> iso(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    iso[l].resize(static_cast<std::size_t>(p.cols()));
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      int i = 0;
      while (i < p.rows() - 1 && p(i, c) > levels[l]) ++i;
      iso[l][static_cast<std::size_t>(c)] = i;
    }
  }
  return iso;
}

} // namespace adspec
