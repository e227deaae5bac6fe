// Compound-Poisson jump samplers and the Monte Carlo harness for the
// convergence-rate experiment: per replication, draw one long jump sequence
// and evaluate the distance curve and the distance at the true exponent on
// each prefix length, then aggregate means, variances and the scaling
// quotients of consecutive prefix sizes.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "levytail/estimator.hpp"
#include "levytail/parallel.hpp"
#include "levytail/rng.hpp"
#include "levytail/wasserstein.hpp"

namespace levytail {

// n i.i.d. draws from the normalized power tail nu^alpha via the inverse
// transform X = rho0 * U^{-1/alpha0}; returned in draw order.
inline std::vector<double> sample_power_law_jumps(std::size_t n, double alpha0,
                                                  double rho0, std::uint64_t seed,
                                                  std::uint64_t stream = 0) {
  if (!(alpha0 > 0.0) || !(rho0 > 0.0))
    throw std::invalid_argument("sample_power_law_jumps: need alpha0, rho0 > 0");
  auto rng = Xoshiro256PlusPlus::substream(seed, stream);
  std::vector<double> jumps(n);
  for (auto& x : jumps) x = rho0 * std::exp(-std::log(rng.uniform01()) / alpha0);
  return jumps;
}

// n i.i.d. N(0, sigma^2) draws (Box-Muller, deterministic pair consumption).
inline std::vector<double> sample_gaussian_jumps(std::size_t n, double sigma,
                                                 std::uint64_t seed,
                                                 std::uint64_t stream = 0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_gaussian_jumps: sigma <= 0");
  auto rng = Xoshiro256PlusPlus::substream(seed, stream);
  std::vector<double> jumps(n);
  const double two_pi = 8.0 * std::atan(1.0);
  for (std::size_t i = 0; i < n; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(rng.uniform01()));
    const double theta = two_pi * rng.uniform01();
    jumps[i] = sigma * r * std::cos(theta);
    if (i + 1 < n) jumps[i + 1] = sigma * r * std::sin(theta);
  }
  return jumps;
}

// Compound Poisson path skeleton: exponential waiting times and the cumulative
// sum of the jumps at each arrival.  Plot-ready output only.
struct CppPath {
  std::vector<double> arrival_times;
  std::vector<double> values;
};

inline CppPath render_cpp_path(std::span<const double> jumps, double intensity,
                               std::uint64_t seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("render_cpp_path: intensity <= 0");
  auto rng = Xoshiro256PlusPlus::substream(seed, 0);
  CppPath path;
  path.arrival_times.reserve(jumps.size());
  path.values.reserve(jumps.size());
  double t = 0.0;
  double level = 0.0;
  for (double jump : jumps) {
    t += rng.exponential(intensity);
    level += jump;
    path.arrival_times.push_back(t);
    path.values.push_back(level);
  }
  return path;
}

enum class JumpDistribution { power_law, gaussian };

struct SimulationConfig {
  double alpha0 = 1.4;
  double rho0 = 0.5;
  std::vector<std::size_t> n_list = {100, 1000, 10000, 100000};
  std::size_t replications = 100;  // m
  std::uint64_t seed = 1;
  JumpDistribution distribution = JumpDistribution::power_law;
  double sigma = 1.0;
  TruncationLevel s = TruncationLevel(1.0);
  double alpha_step = 0.01;
  double alpha_halfwidth = 1.0;
  // Non-dimensionalize each prefix by its interquartile range before the
  // distance evaluation (the analysis convention: s is stated in IQR units).
  // The cutoff is rho0 in data units either way; the argmin is scale
  // invariant, only the distance level changes.
  bool iqr_normalize = true;
  unsigned threads = 0;

  void validate() const {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("SimulationConfig: alpha0 <= 0");
    if (!(rho0 > 0.0)) throw std::invalid_argument("SimulationConfig: rho0 <= 0");
    if (replications < 1) throw std::invalid_argument("SimulationConfig: m < 1");
    if (n_list.empty()) throw std::invalid_argument("SimulationConfig: empty n list");
    for (std::size_t k = 1; k < n_list.size(); ++k) {
      if (n_list[k] <= n_list[k - 1])
        throw std::invalid_argument("SimulationConfig: n list must be ascending");
    }
  }
};

struct ConvergenceCell {
  std::size_t n = 0;
  double alpha_hat_mean = 0.0;
  double alpha_hat_var = 0.0;
  double w_star_mean = 0.0;
  double w_star_var = 0.0;
};

struct ConvergenceReport {
  double alpha0 = 0.0;
  double theoretical_rate = 0.0;  // 10^{-alpha0/(alpha0+2)} per decade of n
  std::vector<ConvergenceCell> cells;
  std::vector<double> q;  // Q_{i,i+1}: ratios of consecutive mean w*
  std::vector<double> r;  // R_{i,i+1}: ratios of consecutive std dev of w*
};

namespace detail {

inline void mean_var(std::span<const double> xs, double& mean, double& var) {
  KahanSum sum;
  for (double x : xs) sum.add(x);
  mean = sum.value() / static_cast<double>(xs.size());
  KahanSum sq;
  for (double x : xs) sq.add((x - mean) * (x - mean));
  var = xs.size() > 1 ? sq.value() / static_cast<double>(xs.size() - 1) : 0.0;
}

}  // namespace detail

// One replication of the rate experiment evaluated on every prefix length:
// alpha_hat from the curve argmin, w* = w~_n at the true exponent.
inline ConvergenceReport convergence_experiment(const SimulationConfig& config) {
  config.validate();
  if (config.distribution != JumpDistribution::power_law)
    throw std::invalid_argument(
        "convergence_experiment: the rate experiment is defined for power-law jumps");
  const std::size_t n_max = config.n_list.back();
  const double lo = std::max(config.alpha_step, config.alpha0 - config.alpha_halfwidth);
  const std::vector<double> alpha_grid =
      linear_grid(lo, config.alpha0 + config.alpha_halfwidth, config.alpha_step);

  const std::size_t m = config.replications;
  const std::size_t cells = config.n_list.size();
  std::vector<double> alpha_hats(m * cells);
  std::vector<double> w_stars(m * cells);

  parallel_for(m, config.threads, [&](std::size_t rep) {
    const std::vector<double> jumps =
        config.distribution == JumpDistribution::power_law
            ? sample_power_law_jumps(n_max, config.alpha0, config.rho0, config.seed,
                                     rep)
            : sample_gaussian_jumps(n_max, config.sigma, config.seed, rep);
    for (std::size_t c = 0; c < cells; ++c) {
      const std::size_t n = config.n_list[c];
      std::vector<double> prefix(jumps.begin(), jumps.begin() + static_cast<long>(n));
      double rho = config.rho0;
      if (config.iqr_normalize) {
        const double iqr = interquartile_range(prefix);
        for (auto& x : prefix) x /= iqr;
        rho = config.rho0 / iqr;
      }
      OrderedSample sample{std::move(prefix)};
      const auto curve = distance_curve(sample, rho, alpha_grid, config.s);
      alpha_hats[rep * cells + c] = curve.alpha_hat;
      const detail::PowerLawW2Kernel kernel(sample.values(), rho, config.s.s);
      w_stars[rep * cells + c] = kernel.evaluate(config.alpha0);
    }
  });

  ConvergenceReport report;
  report.alpha0 = config.alpha0;
  report.theoretical_rate =
      std::pow(10.0, -config.alpha0 / (config.alpha0 + 2.0));
  report.cells.resize(cells);
  std::vector<double> column(m);
  for (std::size_t c = 0; c < cells; ++c) {
    auto& cell = report.cells[c];
    cell.n = config.n_list[c];
    for (std::size_t rep = 0; rep < m; ++rep) column[rep] = alpha_hats[rep * cells + c];
    detail::mean_var(column, cell.alpha_hat_mean, cell.alpha_hat_var);
    for (std::size_t rep = 0; rep < m; ++rep) column[rep] = w_stars[rep * cells + c];
    detail::mean_var(column, cell.w_star_mean, cell.w_star_var);
  }
  for (std::size_t c = 0; c + 1 < cells; ++c) {
    report.q.push_back(report.cells[c + 1].w_star_mean / report.cells[c].w_star_mean);
    report.r.push_back(
        std::sqrt(report.cells[c + 1].w_star_var / report.cells[c].w_star_var));
  }
  return report;
}

}  // namespace levytail
