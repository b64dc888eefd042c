#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "adspec/hamiltonian.hpp"
#include "adspec/sat.hpp"

namespace adspec {

/// Two lowest eigenvalues of H(t) and their difference.
struct GapPoint {
  double e0 = 0.0;
  double e1 = 0.0;
  double delta = 0.0;
};

/// Ground-state gap at interior time t. Throws std::domain_error unless
/// 0 < t < 1 (the gap closes trivially at neither endpoint but the endpoints
/// belong to the classical diagonal problems and are excluded).
GapPoint gap_at(const SatInstance& instance, double t);
GapPoint gap_at(const DiagonalFinal& h1, double t);

/// Result of a minimum-gap search over t in (0, 1).
struct GapRecord {
  std::uint64_t seed = 0;
  int n = 0;
  double alpha = 0.0;
  double t_min = 0.0;
  double delta = 0.0;
  double grid_step = 0.0;
  double tol = 0.0;
  long long evaluations = 0;
  long long tries = 0;            // rejection-sampling tries for the instance
  std::vector<double> grid_local_minima_t; // interior grid minima found in the scan
};

/// Scan t in [grid_step, 1 - grid_step] at spacing grid_step, then refine the
/// bracket around the best interior grid minimum by golden-section search to
/// width tol. The returned delta never exceeds any evaluated gap. Throws
/// ComputeError when the coarse scan has its minimum at a scan boundary with
/// no interior bracket.
GapRecord find_min_gap(const SatInstance& instance, double grid_step = 0.02,
                       double tol = 1e-6);

/// Summary statistics of minimum gaps across an ensemble at one (n, alpha).
struct EnsembleGapStats {
  int n = 0;
  double alpha = 0.0;
  int count = 0;
  double mean = 0.0;
  double median = 0.0;   // mean of the two central order statistics when even
  double min = 0.0;
  double max = 0.0;
  std::vector<double> normalized; // delta / mean, in input order
};

/// Requires >= 2 records sharing one (n, alpha); throws std::invalid_argument
/// on mixed ensembles.
EnsembleGapStats ensemble_stats(std::span<const GapRecord> records);

struct ScalingRow {
  int n = 0;
  int count = 0;
  double median_over_n = 0.0;
  double mean_over_n = 0.0;
  double min_delta = 0.0;
  double max_delta = 0.0;
  double reference = 0.0;   // 1 / (2 sqrt(2^n))
};

/// Rows per n plus the least-squares fit
/// log(median delta / n) = intercept - rate * n. A pure 1/(2 sqrt(2^n)) input
/// fits rate = ln 2 / 2 exactly, the reference decay per variable.
struct ScalingTable {
  std::vector<ScalingRow> rows;
  double rate = 0.0;
  double intercept = 0.0;
  double reference_rate = 0.0; // ln 2 / 2
};

/// Requires stats at >= 3 distinct n. Rows are sorted by n.
ScalingTable scaling_table(std::span<const EnsembleGapStats> per_n);

/// p(i, t) = sum over levels j >= i of |<solution|psi_j(t)>|^2, the
/// probability weight of the solution state above level i. Column c holds the
/// suffix sums for t_grid[c]; row i is level index i in [0, N], with
/// p(N, t) = 0 and p(0, t) = 1. Times must satisfy 0 < t <= 1.
Eigen::MatrixXd probability_flow(const SatInstance& instance,
                                 std::span<const double> t_grid);

/// For each level in `levels`, the smallest level index i with p(i, t) <= level,
/// per time column. Levels must be >= 0; a level >= 1 yields 0 everywhere.
std::vector<std::vector<int>> flow_isolines(const Eigen::MatrixXd& p,
                                            std::span<const double> levels);

} // namespace adspec
