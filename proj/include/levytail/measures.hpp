// Parametric Levy jump measures: one-sided power-law tails, two-sided stable
// tails and Gaussian jump laws, together with tail masses, intensity-matched
// cutoffs and small-jump second moments.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "levytail/errors.hpp"

namespace levytail {

enum class Side { positive, negative };

// One-sided power-law tail measure with density
//   intensity * alpha * rho0^alpha * z^(-1-alpha)  on [rho0, inf).
// side == negative places the measure on (-inf, -rho0]; all tail analysis
// runs on absolute values, so the side only matters for bookkeeping.
struct PowerLawTail {
  double alpha;
  double rho0;
  double intensity = 1.0;
  Side side = Side::positive;

  PowerLawTail(double alpha_, double rho0_, double intensity_ = 1.0,
               Side side_ = Side::positive)
      : alpha(alpha_), rho0(rho0_), intensity(intensity_), side(side_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("PowerLawTail: alpha must be > 0");
    if (!(rho0 > 0.0)) throw std::invalid_argument("PowerLawTail: rho0 must be > 0");
    if (!(intensity > 0.0))
      throw std::invalid_argument("PowerLawTail: intensity must be > 0");
  }
};

// Two-sided alpha-stable Levy measure
//   nu(dz) = c_minus |z|^(-1-alpha) 1{z<0} dz + c_plus z^(-1-alpha) 1{z>0} dz.
// Total mass is infinite; tail mass beyond r is (c_minus+c_plus)/(alpha r^alpha).
struct StableTailMeasure {
  double alpha;
  double c_minus;
  double c_plus;

  StableTailMeasure(double alpha_, double c_minus_, double c_plus_)
      : alpha(alpha_), c_minus(c_minus_), c_plus(c_plus_) {
    if (!(alpha > 0.0 && alpha < 2.0))
      throw std::invalid_argument("StableTailMeasure: alpha must be in (0, 2)");
    if (c_minus < 0.0 || c_plus < 0.0 || !(c_minus + c_plus > 0.0))
      throw std::invalid_argument(
          "StableTailMeasure: weights must be >= 0 with positive sum");
  }
};

// Finite Gaussian jump law intensity * N(0, sigma^2).  Used as a simulation
// input only; it is never exposed as a power-tail reference quantile.
struct GaussianJumpLaw {
  double sigma;
  double intensity = 1.0;

  explicit GaussianJumpLaw(double sigma_, double intensity_ = 1.0)
      : sigma(sigma_), intensity(intensity_) {
    if (!(sigma > 0.0)) throw std::invalid_argument("GaussianJumpLaw: sigma must be > 0");
    if (!(intensity > 0.0))
      throw std::invalid_argument("GaussianJumpLaw: intensity must be > 0");
  }
};

using JumpMeasure = std::variant<PowerLawTail, StableTailMeasure, GaussianJumpLaw>;

// --- tail mass nu(|z| > r) -------------------------------------------------

inline double tail_mass(const PowerLawTail& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("tail_mass: r must be > 0");
  if (r <= m.rho0) return m.intensity;
  return m.intensity * std::exp(m.alpha * std::log(m.rho0 / r));
}

inline double tail_mass(const StableTailMeasure& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("tail_mass: r must be > 0");
  return (m.c_minus + m.c_plus) / (m.alpha * std::pow(r, m.alpha));
}

inline double tail_mass(const GaussianJumpLaw& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("tail_mass: r must be > 0");
  return m.intensity * std::erfc(r / (m.sigma * std::sqrt(2.0)));
}

inline double tail_mass(const JumpMeasure& m, double r) {
  return std::visit([r](const auto& v) { return tail_mass(v, r); }, m);
}

inline double total_mass(const PowerLawTail& m) { return m.intensity; }
inline double total_mass(const StableTailMeasure&) {
  return std::numeric_limits<double>::infinity();
}
inline double total_mass(const GaussianJumpLaw& m) { return m.intensity; }
inline double total_mass(const JumpMeasure& m) {
  return std::visit([](const auto& v) { return total_mass(v); }, m);
}

// --- intensity-matched cutoff rho(lambda) = inf{r : tail_mass(r) <= lambda} --

inline double cutoff_for_intensity(const PowerLawTail& m, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("cutoff_for_intensity: lambda <= 0");
  if (lambda > m.intensity)
    throw std::invalid_argument("cutoff_for_intensity: lambda exceeds total mass");
  // tail_mass(r) = intensity (rho0/r)^alpha for r >= rho0, so the matched
  // cutoff never drops below the anchor.
  return m.rho0 * std::exp(std::log(m.intensity / lambda) / m.alpha);
}

inline double cutoff_for_intensity(const StableTailMeasure& m, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("cutoff_for_intensity: lambda <= 0");
  return std::exp(std::log((m.c_minus + m.c_plus) / (m.alpha * lambda)) / m.alpha);
}

inline double cutoff_for_intensity(const GaussianJumpLaw& m, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("cutoff_for_intensity: lambda <= 0");
  if (lambda > m.intensity)
    throw std::invalid_argument("cutoff_for_intensity: lambda exceeds total mass");
  if (lambda == m.intensity) return 0.0;
  double lo = 0.0;
  double hi = m.sigma;
  while (tail_mass(m, hi) > lambda) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (tail_mass(m, mid) > lambda ? lo : hi) = mid;
  }
  return hi;
}

inline double cutoff_for_intensity(const JumpMeasure& m, double lambda) {
  return std::visit(
      [lambda](const auto& v) { return cutoff_for_intensity(v, lambda); }, m);
}

// --- small-jump second moment U(rho) = int_{|u|<=rho} u^2 nu(du) -----------

inline double small_jump_variance(const PowerLawTail& m, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("small_jump_variance: rho <= 0");
  if (rho <= m.rho0) return 0.0;  // support starts at the anchor
  const double c = m.intensity * m.alpha * std::pow(m.rho0, m.alpha);
  if (std::fabs(m.alpha - 2.0) < 1e-8) return c * std::log(rho / m.rho0);
  return c * (std::pow(rho, 2.0 - m.alpha) - std::pow(m.rho0, 2.0 - m.alpha)) /
         (2.0 - m.alpha);
}

inline double small_jump_variance(const StableTailMeasure& m, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("small_jump_variance: rho <= 0");
  return (m.c_minus + m.c_plus) * std::pow(rho, 2.0 - m.alpha) / (2.0 - m.alpha);
}

inline double small_jump_variance(const GaussianJumpLaw& m, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("small_jump_variance: rho <= 0");
  const double t = rho / m.sigma;
  const double phi = std::exp(-0.5 * t * t) / std::sqrt(8.0 * std::atan(1.0));
  return m.intensity * m.sigma * m.sigma * (std::erf(t / std::sqrt(2.0)) - 2.0 * t * phi);
}

inline double small_jump_variance(const JumpMeasure& m, double rho) {
  return std::visit([rho](const auto& v) { return small_jump_variance(v, rho); }, m);
}

}  // namespace levytail
