// The estimation pipeline: increment extraction, interquartile-range
// non-dimensionalization, tail splitting at a cutoff, distance curves over a
// grid of tail exponents, the minimum-distance estimator, cutoff sweeps with
// their locus of minima, and the computable triangle-bound diagnostic.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "levytail/measures.hpp"
#include "levytail/parallel.hpp"
#include "levytail/reference.hpp"
#include "levytail/wasserstein.hpp"

namespace levytail {

// First differences of an observed series, with the scale used for
// non-dimensionalization.  `iqr` records the divisor actually applied
// (1 until nondimensionalize has run).
struct IncrementSeries {
  std::vector<double> increments;
  double iqr = 1.0;
  bool normalized = false;
  std::size_t source_length = 0;
};

inline IncrementSeries extract_increments(std::span<const double> series) {
  if (series.size() < 2)
    throw std::invalid_argument("extract_increments: need at least 2 observations");
  IncrementSeries out;
  out.source_length = series.size();
  out.increments.reserve(series.size() - 1);
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!std::isfinite(series[i - 1]) || !std::isfinite(series[i]))
      throw std::invalid_argument("extract_increments: non-finite observation");
    out.increments.push_back(series[i] - series[i - 1]);
  }
  return out;
}

// Type-7 (linear interpolation) sample quantile of unsorted data.
inline double sample_quantile(std::span<const double> data, double p) {
  if (data.empty()) throw std::invalid_argument("sample_quantile: empty data");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sample_quantile: p outside [0,1]");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto k = static_cast<std::size_t>(h);
  if (k + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(k);
  return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

inline double interquartile_range(std::span<const double> data) {
  return sample_quantile(data, 0.75) - sample_quantile(data, 0.25);
}

inline IncrementSeries nondimensionalize(const IncrementSeries& incr) {
  const double iqr = interquartile_range(incr.increments);
  if (!(iqr > 0.0))
    throw std::invalid_argument("nondimensionalize: zero interquartile range");
  IncrementSeries out;
  out.increments.reserve(incr.increments.size());
  for (double x : incr.increments) out.increments.push_back(x / iqr);
  out.iqr = incr.iqr * iqr;
  out.normalized = true;
  out.source_length = incr.source_length;
  return out;
}

// Sorted absolute exceedances of each tail.  Sides may be empty when the
// cutoff is above the largest increment.
struct TailSplit {
  std::vector<double> positive;  // sorted {x : x > rho}
  std::vector<double> negative;  // sorted {|x| : x < -rho}
};

inline TailSplit split_tails(const IncrementSeries& incr, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("split_tails: rho must be > 0");
  TailSplit out;
  for (double x : incr.increments) {
    if (x > rho) out.positive.push_back(x);
    else if (x < -rho) out.negative.push_back(-x);
  }
  std::sort(out.positive.begin(), out.positive.end());
  std::sort(out.negative.begin(), out.negative.end());
  return out;
}

inline const std::vector<double>& tail_of(const TailSplit& split, Side side) {
  return side == Side::positive ? split.positive : split.negative;
}

// Distance curve alpha -> w~_n(alpha) against power-law references anchored
// at the cutoff, with its grid argmin (smallest-alpha tie break).
struct DistanceCurve {
  std::vector<double> alpha_grid;
  std::vector<double> values;
  std::size_t argmin_index = 0;
  double alpha_hat = 0.0;
  double min_value = 0.0;
  double rho = 0.0;
  double s = 1.0;
  std::size_t n_points = 0;
};

inline DistanceCurve distance_curve(const OrderedSample& sample, double rho,
                                    std::span<const double> alpha_grid,
                                    TruncationLevel s = {}) {
  if (alpha_grid.empty()) throw std::invalid_argument("distance_curve: empty grid");
  if (!(rho > 0.0)) throw std::invalid_argument("distance_curve: rho must be > 0");
  if (sample.front() < rho)
    throw std::invalid_argument("distance_curve: sample values below the cutoff");
  for (std::size_t k = 1; k < alpha_grid.size(); ++k) {
    if (!(alpha_grid[k] > alpha_grid[k - 1]))
      throw std::invalid_argument("distance_curve: alpha grid must be ascending");
  }
  if (!(alpha_grid.front() > 0.0))
    throw std::invalid_argument("distance_curve: alpha grid must be positive");

  DistanceCurve curve;
  curve.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
  curve.values.resize(alpha_grid.size());
  curve.rho = rho;
  curve.s = s.s;
  curve.n_points = sample.size();

  if (s.finite()) {
    const detail::PowerLawW2Kernel kernel(sample.values(), rho, s.s);
    for (std::size_t k = 0; k < curve.alpha_grid.size(); ++k)
      curve.values[k] = kernel.evaluate(curve.alpha_grid[k]);
  } else {
    for (std::size_t k = 0; k < curve.alpha_grid.size(); ++k)
      curve.values[k] =
          empirical_w2_squared(sample, PowerLawQuantile(curve.alpha_grid[k], rho));
  }

  curve.argmin_index = 0;
  for (std::size_t k = 1; k < curve.values.size(); ++k) {
    if (curve.values[k] < curve.values[curve.argmin_index]) curve.argmin_index = k;
  }
  curve.alpha_hat = curve.alpha_grid[curve.argmin_index];
  curve.min_value = curve.values[curve.argmin_index];
  return curve;
}

inline double min_distance_estimator(const DistanceCurve& curve) {
  if (curve.values.empty())
    throw std::invalid_argument("min_distance_estimator: empty curve");
  return curve.alpha_hat;
}

// One row of the locus of minima.
struct SweepRow {
  double rho = 0.0;
  double alpha_hat = 0.0;
  double min_value = 0.0;
  std::size_t n_points = 0;
  bool reliable = false;  // at least min_points exceedances
};

struct SweepBest {
  double rho = 0.0;
  double alpha = 0.0;
  double distance = 0.0;
  std::size_t row_index = 0;
};

struct SweepResult {
  std::vector<double> cutoff_grid;
  std::vector<DistanceCurve> curves;  // empty curve where a row has no points
  std::vector<SweepRow> locus;
  std::optional<SweepBest> global_best;  // over reliable rows
};

struct SweepOptions {
  std::size_t min_points = 30;
  unsigned threads = 0;
};

inline SweepResult cutoff_sweep(const IncrementSeries& incr, Side side,
                                std::span<const double> cutoff_grid,
                                std::span<const double> alpha_grid,
                                TruncationLevel s = {}, SweepOptions opts = {}) {
  if (cutoff_grid.empty()) throw std::invalid_argument("cutoff_sweep: empty grid");
  for (std::size_t k = 1; k < cutoff_grid.size(); ++k) {
    if (!(cutoff_grid[k] > cutoff_grid[k - 1]))
      throw std::invalid_argument("cutoff_sweep: cutoff grid must be ascending");
  }
  SweepResult result;
  result.cutoff_grid.assign(cutoff_grid.begin(), cutoff_grid.end());
  result.curves.resize(cutoff_grid.size());
  result.locus.resize(cutoff_grid.size());

  parallel_for(cutoff_grid.size(), opts.threads, [&](std::size_t k) {
    const double rho = result.cutoff_grid[k];
    auto split = split_tails(incr, rho);
    auto& values = tail_of(split, side);
    SweepRow row;
    row.rho = rho;
    row.n_points = values.size();
    row.reliable = values.size() >= opts.min_points;
    if (!values.empty()) {
      const OrderedSample sample{std::vector<double>(values)};
      result.curves[k] = distance_curve(sample, rho, alpha_grid, s);
      row.alpha_hat = result.curves[k].alpha_hat;
      row.min_value = result.curves[k].min_value;
    }
    result.locus[k] = row;
  });

  for (std::size_t k = 0; k < result.locus.size(); ++k) {
    const auto& row = result.locus[k];
    if (!row.reliable) continue;
    if (!result.global_best || row.min_value < result.global_best->distance) {
      result.global_best = SweepBest{row.rho, row.alpha_hat, row.min_value, k};
    }
  }
  return result;
}

// Default grids from the analysis procedure: alpha step 0.01 on [0.5, 8]
// (extendable for Gaussian discrimination), and 40 log-spaced cutoffs between
// the 50% and 99.5% quantiles of |increments|.
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("linear_grid");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k)
    grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("log_grid");
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = lo * std::exp(ratio * static_cast<double>(k));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

inline std::vector<double> default_alpha_grid(double lo = 0.5, double hi = 8.0) {
  return linear_grid(lo, hi, 0.01);
}

inline std::vector<double> default_cutoff_grid(const IncrementSeries& incr,
                                               std::size_t count = 40) {
  std::vector<double> abs_incr;
  abs_incr.reserve(incr.increments.size());
  for (double x : incr.increments) abs_incr.push_back(std::fabs(x));
  const double lo = sample_quantile(abs_incr, 0.50);
  const double hi = sample_quantile(abs_incr, 0.995);
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("default_cutoff_grid: degenerate increment scale");
  return log_grid(lo, hi, count);
}

// Computable first term of the triangle bound: (lambda* w~_n)^{1/2} where
// lambda* is the tail mass of the candidate measure beyond rho*.
struct ModelDistanceBound {
  double lambda_star = 0.0;
  double w_tilde = 0.0;
  double bound = 0.0;
  double cap = 0.0;  // sqrt(lambda* s)
};

inline ModelDistanceBound model_distance_bound(const OrderedSample& sample,
                                               const JumpMeasure& ref_measure,
                                               double rho_star,
                                               TruncationLevel s = {}) {
  ModelDistanceBound out;
  out.lambda_star = tail_mass(ref_measure, rho_star);
  out.w_tilde = std::visit(
      [&](const auto& m) {
        return empirical_w2_truncated(sample, normalized_tail(m, rho_star), s);
      },
      ref_measure);
  out.bound = std::sqrt(out.lambda_star * out.w_tilde);
  out.cap = s.finite() ? std::sqrt(out.lambda_star * s.s)
                       : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace levytail
