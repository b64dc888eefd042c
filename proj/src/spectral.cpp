#include "adspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adspec/errors.hpp"

namespace adspec {
namespace {

std::vector<double> slice(const Eigen::VectorXd& values, Eigen::Index i0, Eigen::Index i1) {
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(i1 - i0));
  for (Eigen::Index i = i0; i < i1; ++i) e.push_back(values[i]);
  return e;
}

double bound_below(const Eigen::VectorXd& values, Eigen::Index i0) {
  if (i0 <= 0) return values[0] - 1.0;
  return 0.5 * (values[i0 - 1] + values[i0]);
}

double bound_above(const Eigen::VectorXd& values, Eigen::Index i1) {
  if (i1 >= values.size()) return values[values.size() - 1] + 1.0;
  return 0.5 * (values[i1 - 1] + values[i1]);
}

} // namespace

SpectralWindow window_by_fraction(const Eigen::VectorXd& values, double lo_frac, double hi_frac,
                                  std::string source) {
  if (!(0.0 <= lo_frac && lo_frac < hi_frac && hi_frac <= 1.0))
    throw std::invalid_argument("window fractions must satisfy 0 <= lo < hi <= 1");
  const auto L = values.size();
  const auto i0 = static_cast<Eigen::Index>(std::llround(lo_frac * static_cast<double>(L)));
  const auto i1 = static_cast<Eigen::Index>(std::llround(hi_frac * static_cast<double>(L)));
  SpectralWindow w;
  w.energies = slice(values, i0, i1);
  w.lo = bound_below(values, i0);
  w.hi = bound_above(values, i1);
  w.source = std::move(source);
  return w;
}

SpectralWindow window_low_energy(const Eigen::VectorXd& values, int start_index, double end_frac,
                                 std::string source) {
  const auto L = values.size();
  const auto i0 = static_cast<Eigen::Index>(start_index);
  const auto i1 = static_cast<Eigen::Index>(std::llround(end_frac * static_cast<double>(L)));
  if (i0 < 0 || i1 > L || i0 >= i1)
    throw std::invalid_argument("low-energy window bounds out of order");
  SpectralWindow w;
  w.energies = slice(values, i0, i1);
  w.lo = bound_below(values, i0);
  w.hi = bound_above(values, i1);
  w.source = std::move(source);
  return w;
}

SpectralWindow window_by_energy(const Eigen::VectorXd& values, double lo, double hi,
                                std::string source) {
  if (!(lo < hi)) throw std::invalid_argument("energy window bounds out of order");
  SpectralWindow w;
  w.lo = lo;
  w.hi = hi;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] > lo && values[i] < hi) w.energies.push_back(values[i]);
  w.source = std::move(source);
  return w;
}

std::array<double, 4> CubicFit::raw_coeffs() const {
  const double c = center, s = scale;
  const double a1 = coeffs[1] / s;
  const double a2 = coeffs[2] / (s * s);
  const double a3 = coeffs[3] / (s * s * s);
  return {coeffs[0] - c * a1 + c * c * a2 - c * c * c * a3,
          a1 - 2.0 * c * a2 + 3.0 * c * c * a3,
          a2 - 3.0 * c * a3,
          a3};
}

SpacingSample unfold(const SpectralWindow& window) {
  const auto L = static_cast<Eigen::Index>(window.energies.size());
  if (L < kMinWindowLevels)
    throw ComputeError("window has " + std::to_string(L) + " levels, need at least " +
                       std::to_string(kMinWindowLevels));
  const double e_first = window.energies.front();
  const double e_last = window.energies.back();
  if (!(e_last > e_first)) throw ComputeError("unfolding fit singular: window has no spread");

  CubicFit fit;
  fit.center = 0.5 * (e_first + e_last);
  fit.scale = 0.5 * (e_last - e_first);
  Eigen::MatrixXd design(L, 4);
  Eigen::VectorXd target(L);
  for (Eigen::Index i = 0; i < L; ++i) {
    const double u = (window.energies[static_cast<std::size_t>(i)] - fit.center) / fit.scale;
    design(i, 0) = 1.0;
    design(i, 1) = u;
    design(i, 2) = u * u;
    design(i, 3) = u * u * u;
    target[i] = static_cast<double>(i) + 0.5;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4)
    throw ComputeError("unfolding fit singular: staircase design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(target);
  for (int j = 0; j < 4; ++j) fit.coeffs[static_cast<std::size_t>(j)] = c[j];

  SpacingSample sample;
  sample.fit = fit;
  sample.spacings.reserve(static_cast<std::size_t>(L - 1));
  double prev = fit.eval(window.energies.front());
  double sum = 0.0;
  for (Eigen::Index i = 1; i < L; ++i) {
    const double cur = fit.eval(window.energies[static_cast<std::size_t>(i)]);
    double s = cur - prev;
    if (s < 0.0) {
      s = 0.0;
      ++sample.clamped;
    }
    sample.spacings.push_back(s);
    sum += s;
    prev = cur;
  }
  sample.mean = sum / static_cast<double>(L - 1);
  if (!(sample.mean >= 0.99 && sample.mean <= 1.01))
    throw ComputeError("unfolded mean spacing " + std::to_string(sample.mean) +
                       " outside [0.99, 1.01]");
  return sample;
}

const char* law_name(ReferenceLaw law) {
  switch (law) {
    case ReferenceLaw::poisson: return "poisson";
    case ReferenceLaw::wigner_goe: return "wigner_goe";
    case ReferenceLaw::semi_poisson: return "semi_poisson";
  }
  return "unknown";
}

double reference_pdf(ReferenceLaw law, double s) {
  if (s < 0.0) throw std::domain_error("spacing must be non-negative");
  switch (law) {
    case ReferenceLaw::poisson: return std::exp(-s);
    case ReferenceLaw::wigner_goe:
      return 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
    case ReferenceLaw::semi_poisson: return 4.0 * s * std::exp(-2.0 * s);
  }
  return 0.0;
}

double reference_cdf(ReferenceLaw law, double s) {
  if (s < 0.0) throw std::domain_error("spacing must be non-negative");
  switch (law) {
    case ReferenceLaw::poisson: return 1.0 - std::exp(-s);
    case ReferenceLaw::wigner_goe: return 1.0 - std::exp(-0.25 * std::numbers::pi * s * s);
    case ReferenceLaw::semi_poisson: return 1.0 - (1.0 + 2.0 * s) * std::exp(-2.0 * s);
  }
  return 0.0;
}

Histogram histogram(std::span<const double> values, double bin_width, double s_max) {
  if (!(bin_width > 0.0) || !(s_max > 0.0))
    throw std::invalid_argument("histogram requires bin_width > 0 and s_max > 0");
  Histogram h;
  h.bin_width = bin_width;
  h.s_max = s_max;
  const auto nbins = static_cast<std::size_t>(std::ceil(s_max / bin_width - 1e-9));
  h.counts.assign(nbins, 0);
  h.density.assign(nbins, 0.0);
  h.total = values.size();
  long long overflow = 0;
  for (double s : values) {
    if (s >= s_max) {
      ++overflow;
      continue;
    }
    auto j = static_cast<std::size_t>(s / bin_width);
    if (j >= nbins) j = nbins - 1; // s just below s_max with rounding up
    ++h.counts[j];
  }
  if (h.total > 0) {
    h.overflow_mass = static_cast<double>(overflow) / static_cast<double>(h.total);
    const double norm = 1.0 / (static_cast<double>(h.total) * bin_width);
    for (std::size_t j = 0; j < nbins; ++j)
      h.density[j] = static_cast<double>(h.counts[j]) * norm;
  }
  return h;
}

Histogram histogram(const SpacingSample& sample, double bin_width, double s_max) {
  return histogram(std::span<const double>(sample.spacings), bin_width, s_max);
}

std::vector<std::pair<double, double>> cumulative(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> cdf;
  const auto total = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue; // keep last of a tie run
    cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / total);
  }
  return cdf;
}

std::vector<std::pair<double, double>> cumulative(const SpacingSample& sample) {
  return cumulative(std::span<const double>(sample.spacings));
}

double ks_distance(std::span<const double> values, ReferenceLaw law) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(law, sorted[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_distance(const SpacingSample& sample, ReferenceLaw law) {
  return ks_distance(std::span<const double>(sample.spacings), law);
}

double small_s_exponent(const SpacingSample& sample, double s_cut) {
  if (!(s_cut > 0.0)) throw std::invalid_argument("s_cut must be positive");
  std::vector<double> sorted(sample.spacings);
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] <= 0.0 || sorted[i] >= s_cut) continue;
    lx.push_back(std::log(sorted[i]));
    ly.push_back(std::log(static_cast<double>(i + 1) / n));
  }
  if (lx.size() < 30)
    throw ComputeError("only " + std::to_string(lx.size()) +
                       " positive spacings below the cut, need at least 30");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw ComputeError("small-s fit degenerate: all points at one spacing");
  return sxy / sxx;
}

} // namespace adspec
