#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adspec {

/// Minimum window length for unfolding and spacing statistics.
inline constexpr int kMinWindowLevels = 50;

/// An ascending slice of a spectrum, with the energy bounds it was cut at.
struct SpectralWindow {
  std::vector<double> energies;
  double lo = 0.0;
  double hi = 0.0;
  std::string source; // instance id / interpolation time, free form
};

/// Central band of the sorted spectrum by index fraction, e.g. (0.2, 0.8) for
/// the central 60%.
SpectralWindow window_by_fraction(const Eigen::VectorXd& values, double lo_frac, double hi_frac,
                                  std::string source = {});

/// Low-energy band: levels from start_index (default 8) up to the index
/// covering end_frac of the spectrum. Defaults mirror a 1724-of-16384 cut
/// starting at the 8th level.
SpectralWindow window_low_energy(const Eigen::VectorXd& values, int start_index = 8,
                                 double end_frac = 1732.0 / 16384.0, std::string source = {});

/// Explicit energy cut (lo, hi), strict inequalities.
SpectralWindow window_by_energy(const Eigen::VectorXd& values, double lo, double hi,
                                std::string source = {});

/// Cubic fitted to the spectral staircase in a centered/scaled variable.
struct CubicFit {
  double center = 0.0;
  double scale = 1.0;
  std::array<double, 4> coeffs{}; // in u = (E - center)/scale, ascending powers

  double eval(double energy) const {
    const double u = (energy - center) / scale;
    return ((coeffs[3] * u + coeffs[2]) * u + coeffs[1]) * u + coeffs[0];
  }
  /// Coefficients in the raw energy variable, ascending powers.
  std::array<double, 4> raw_coeffs() const;
};

/// Unfolded nearest-neighbor spacings: cubic least-squares fit of the
/// cumulative staircase (E_i, i + 1/2), spacings s_i = P(E_{i+1}) - P(E_i).
/// Negative spacings from locally non-monotone fits are clamped to zero and
/// counted.
struct SpacingSample {
  std::vector<double> spacings;
  double mean = 0.0;
  CubicFit fit;
  int clamped = 0;
};

/// Throws ComputeError for windows below kMinWindowLevels, singular fits, or
/// a mean unfolded spacing outside [0.99, 1.01] (the unfolding quality gate).
SpacingSample unfold(const SpectralWindow& window);

enum class ReferenceLaw { poisson, wigner_goe, semi_poisson };

const char* law_name(ReferenceLaw law);

/// poisson: exp(-s); wigner_goe: (pi/2) s exp(-pi s^2/4); semi_poisson: 4 s exp(-2 s).
/// Throws std::domain_error for s < 0.
double reference_pdf(ReferenceLaw law, double s);
double reference_cdf(ReferenceLaw law, double s);

struct Histogram {
  double bin_width = 0.0;
  double s_max = 0.0;
  std::vector<double> density;     // per bin, integrates to the retained mass
  std::vector<long long> counts;
  double overflow_mass = 0.0;      // fraction of spacings at or beyond s_max
  std::size_t total = 0;

  double bin_center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * bin_width; }
};

Histogram histogram(const SpacingSample& sample, double bin_width = 0.1, double s_max = 4.0);
Histogram histogram(std::span<const double> values, double bin_width, double s_max);

/// Empirical CDF at the sorted sample points, right-continuous.
std::vector<std::pair<double, double>> cumulative(const SpacingSample& sample);
std::vector<std::pair<double, double>> cumulative(std::span<const double> values);

/// Sup-norm distance between the empirical CDF and the law's closed-form CDF.
double ks_distance(const SpacingSample& sample, ReferenceLaw law);
double ks_distance(std::span<const double> values, ReferenceLaw law);

/// Log-log least-squares slope of the empirical CDF restricted to s < s_cut.
/// Requires at least 30 positive sample points below the cut.
double small_s_exponent(const SpacingSample& sample, double s_cut);

} // namespace adspec
