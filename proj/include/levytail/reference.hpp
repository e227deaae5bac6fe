// Reference quantile models.
//
// Every distance kernel in this library consumes a distribution through four
// functions: the CDF F, the quantile F^{-1}, and the partial integrals
//   partial_q1(a,b) = int_a^b F^{-1}(u) du,
//   partial_q2(a,b) = int_a^b (F^{-1}(u))^2 du.
// Power-law models provide these in closed form; the partial integrals are
// evaluated through expm1/log1p so that narrow (a,b) windows do not cancel.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "levytail/errors.hpp"
#include "levytail/measures.hpp"

namespace levytail {

template <class M>
concept QuantileModel = requires(const M& m, double x, double u) {
  { m.cdf(x) } -> std::convertible_to<double>;
  { m.quantile(u) } -> std::convertible_to<double>;
  { m.partial_q1(u, u) } -> std::convertible_to<double>;
  { m.partial_q2(u, u) } -> std::convertible_to<double>;
  { m.second_moment_finite() } -> std::convertible_to<bool>;
};

namespace detail {

inline void check_unit_interval(double a, double b) {
  if (!(0.0 <= a && a <= b && b <= 1.0))
    throw std::invalid_argument("partial integral: need 0 <= a <= b <= 1");
}

}  // namespace detail

// Normalized power-law tail anchored at rho:
//   F(x) = 1 - (rho/x)^alpha on [rho, inf),  F^{-1}(u) = rho (1-u)^{-1/alpha}.
class PowerLawQuantile {
 public:
  PowerLawQuantile(double alpha, double rho) : alpha_(alpha), rho_(rho) {
    if (!(alpha > 0.0)) throw std::invalid_argument("PowerLawQuantile: alpha <= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("PowerLawQuantile: rho <= 0");
  }

  double alpha() const { return alpha_; }
  double rho() const { return rho_; }

  double cdf(double x) const {
    if (x <= rho_) return 0.0;
    return -std::expm1(alpha_ * std::log(rho_ / x));
  }

  // P(X > x); exact in the deep tail where 1 - F(x) underflows.
  double survival(double x) const {
    if (x <= rho_) return 1.0;
    return std::exp(alpha_ * std::log(rho_ / x));
  }

  double quantile(double u) const {
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile: u outside [0,1]");
    if (u == 1.0) return std::numeric_limits<double>::infinity();
    return rho_ * std::exp(-std::log1p(-u) / alpha_);
  }

  double quantile_from_survival(double s) const {
    return rho_ * std::exp(-std::log(s) / alpha_);
  }

  double partial_q1(double a, double b) const {
    detail::check_unit_interval(a, b);
    if (a == b) return 0.0;
    const double la = std::log1p(-a);
    if (std::fabs(alpha_ - 1.0) < 1e-8) {
      if (b == 1.0) throw InfiniteMomentError("partial_q1: infinite first moment");
      return rho_ * (la - std::log1p(-b));
    }
    const double c1 = 1.0 - 1.0 / alpha_;
    if (b == 1.0) {
      if (alpha_ < 1.0) throw InfiniteMomentError("partial_q1: infinite first moment");
      return rho_ * alpha_ / (alpha_ - 1.0) * std::exp(c1 * la);
    }
    const double lb = std::log1p(-b);
    return rho_ * alpha_ / (alpha_ - 1.0) * std::exp(c1 * la) *
           (-std::expm1(c1 * (lb - la)));
  }

  double partial_q2(double a, double b) const {
    detail::check_unit_interval(a, b);
    if (a == b) return 0.0;
    const double la = std::log1p(-a);
    if (std::fabs(alpha_ - 2.0) < 1e-8) {
      if (b == 1.0) throw InfiniteMomentError("partial_q2: infinite second moment");
      return rho_ * rho_ * (la - std::log1p(-b));
    }
    const double c2 = 1.0 - 2.0 / alpha_;
    if (b == 1.0) {
      if (alpha_ < 2.0) throw InfiniteMomentError("partial_q2: infinite second moment");
      return rho_ * rho_ * alpha_ / (alpha_ - 2.0) * std::exp(c2 * la);
    }
    const double lb = std::log1p(-b);
    return rho_ * rho_ * alpha_ / (alpha_ - 2.0) * std::exp(c2 * la) *
           (-std::expm1(c2 * (lb - la)));
  }

  bool second_moment_finite() const { return alpha_ > 2.0; }

 private:
  double alpha_;
  double rho_;
};

// Equal-weight discrete distribution on a sorted list of atoms.  This is the
// empirical law of a sample viewed as a reference measure.
class DiscreteQuantile {
 public:
  explicit DiscreteQuantile(std::vector<double> sorted_atoms)
      : atoms_(std::move(sorted_atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("DiscreteQuantile: empty");
    if (!std::is_sorted(atoms_.begin(), atoms_.end()))
      throw std::invalid_argument("DiscreteQuantile: atoms must be sorted");
  }

  double cdf(double x) const {
    const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) / static_cast<double>(atoms_.size());
  }

  double quantile(double u) const {
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile: u outside [0,1]");
    const std::size_t m = atoms_.size();
    if (u == 0.0) return atoms_.front();
    const auto k = static_cast<std::size_t>(std::ceil(u * static_cast<double>(m)));
    return atoms_[std::min(k, m) - 1];
  }

  double partial_q1(double a, double b) const { return partial_sum(a, b, false); }
  double partial_q2(double a, double b) const { return partial_sum(a, b, true); }
  bool second_moment_finite() const { return true; }

 private:
  double partial_sum(double a, double b, bool squared) const {
    detail::check_unit_interval(a, b);
    const double m = static_cast<double>(atoms_.size());
    double total = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      const double lo = std::max(a, static_cast<double>(k) / m);
      const double hi = std::min(b, static_cast<double>(k + 1) / m);
      if (hi > lo) total += (squared ? atoms_[k] * atoms_[k] : atoms_[k]) * (hi - lo);
    }
    return total;
  }

  std::vector<double> atoms_;
};

// Normalized tail of a two-sided stable measure at cutoff rho: mass u_star on
// (-inf, -rho], mass 1-u_star on [rho, inf), each side a power law with the
// same exponent.  The quantile is the piecewise inversion split at u_star.
class TwoSidedPowerQuantile {
 public:
  TwoSidedPowerQuantile(double alpha, double rho, double u_star)
      : alpha_(alpha), rho_(rho), u_star_(u_star) {
    if (!(alpha > 0.0)) throw std::invalid_argument("TwoSidedPowerQuantile: alpha <= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("TwoSidedPowerQuantile: rho <= 0");
    if (!(u_star >= 0.0 && u_star < 1.0))
      throw std::invalid_argument("TwoSidedPowerQuantile: u_star outside [0,1)");
  }

  double cdf(double x) const {
    if (x <= -rho_)
      return u_star_ * std::exp(alpha_ * std::log(rho_ / (-x)));
    if (x < rho_) return u_star_;
    return 1.0 - (1.0 - u_star_) * std::exp(alpha_ * std::log(rho_ / x));
  }

  double quantile(double u) const {
    if (u < 0.0 || u > 1.0) throw std::invalid_argument("quantile: u outside [0,1]");
    if (u <= u_star_) {
      if (u == 0.0) return -std::numeric_limits<double>::infinity();
      return -rho_ * std::exp(std::log(u_star_ / u) / alpha_);
    }
    if (u == 1.0) return std::numeric_limits<double>::infinity();
    return rho_ * std::exp(std::log((1.0 - u_star_) / (1.0 - u)) / alpha_);
  }

  double partial_q1(double a, double b) const {
    detail::check_unit_interval(a, b);
    double total = 0.0;
    if (a < u_star_) total += negative_moment(a, std::min(b, u_star_), 1);
    if (b > u_star_) total += positive_moment(std::max(a, u_star_), b, 1);
    return total;
  }

  double partial_q2(double a, double b) const {
    detail::check_unit_interval(a, b);
    double total = 0.0;
    if (a < u_star_) total += negative_moment(a, std::min(b, u_star_), 2);
    if (b > u_star_) total += positive_moment(std::max(a, u_star_), b, 2);
    return total;
  }

  bool second_moment_finite() const { return alpha_ > 2.0; }

 private:
  // int_a^b (F^{-1}(u))^p du on the negative branch, signed for p = 1.
  double negative_moment(double a, double b, int p) const {
    const double pd = static_cast<double>(p);
    const double sign = (p == 1) ? -1.0 : 1.0;
    const double scale = std::pow(rho_, pd) * std::pow(u_star_, pd / alpha_);
    const double e = 1.0 - pd / alpha_;
    if (std::fabs(e) < 1e-8) {
      if (a == 0.0) throw InfiniteMomentError("negative tail moment diverges");
      return sign * scale * std::log(b / a);
    }
    if (a == 0.0 && e < 0.0)
      throw InfiniteMomentError("negative tail moment diverges");
    const double upper = std::pow(b, e);
    const double lower = (a == 0.0) ? 0.0 : std::pow(a, e);
    return sign * scale * (upper - lower) / e;
  }

  double positive_moment(double a, double b, int p) const {
    const PowerLawQuantile one_sided(alpha_, rho_);
    // Map u in (u_star, 1) to the one-sided level v = (u - u_star)/(1 - u_star).
    const double va = (a - u_star_) / (1.0 - u_star_);
    const double vb = (b - u_star_) / (1.0 - u_star_);
    const double w = 1.0 - u_star_;
    return w * (p == 1 ? one_sided.partial_q1(std::clamp(va, 0.0, 1.0),
                                              std::clamp(vb, 0.0, 1.0))
                       : one_sided.partial_q2(std::clamp(va, 0.0, 1.0),
                                              std::clamp(vb, 0.0, 1.0)));
  }

  double alpha_;
  double rho_;
  double u_star_;
};

// Value-semantic type-erased reference quantile; cheap to copy, immutable.
class ReferenceQuantile {
 public:
  template <QuantileModel M>
    requires(!std::same_as<std::remove_cvref_t<M>, ReferenceQuantile>)
  ReferenceQuantile(M model)  // NOLINT(google-explicit-constructor)
      : impl_(std::make_shared<Holder<std::remove_cvref_t<M>>>(std::move(model))) {}

  double cdf(double x) const { return impl_->cdf(x); }
  double quantile(double u) const { return impl_->quantile(u); }
  double partial_q1(double a, double b) const { return impl_->partial_q1(a, b); }
  double partial_q2(double a, double b) const { return impl_->partial_q2(a, b); }
  bool second_moment_finite() const { return impl_->second_moment_finite(); }

 private:
  struct Interface {
    virtual ~Interface() = default;
    virtual double cdf(double) const = 0;
    virtual double quantile(double) const = 0;
    virtual double partial_q1(double, double) const = 0;
    virtual double partial_q2(double, double) const = 0;
    virtual bool second_moment_finite() const = 0;
  };

  template <class M>
  struct Holder final : Interface {
    explicit Holder(M m) : model(std::move(m)) {}
    double cdf(double x) const override { return model.cdf(x); }
    double quantile(double u) const override { return model.quantile(u); }
    double partial_q1(double a, double b) const override {
      return model.partial_q1(a, b);
    }
    double partial_q2(double a, double b) const override {
      return model.partial_q2(a, b);
    }
    bool second_moment_finite() const override { return model.second_moment_finite(); }
    M model;
  };

  std::shared_ptr<const Interface> impl_;
};

// --- normalized tails nu_rho = nu(. intersect {|z| > rho}) / tail_mass -----

inline PowerLawQuantile normalized_tail(const PowerLawTail& m, double rho) {
  // Re-anchoring: the power-law family is closed under restriction to a
  // higher cutoff, so the normalized tail at rho >= rho0 is again a power law
  // with the same exponent anchored at rho.
  if (rho < m.rho0 * (1.0 - 1e-12))
    throw std::invalid_argument("normalized_tail: rho below the support anchor");
  return PowerLawQuantile(m.alpha, std::max(rho, m.rho0));
}

inline TwoSidedPowerQuantile normalized_tail(const StableTailMeasure& m, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("normalized_tail: rho <= 0");
  return TwoSidedPowerQuantile(m.alpha, rho, m.c_minus / (m.c_minus + m.c_plus));
}

inline ReferenceQuantile normalized_tail(const GaussianJumpLaw&, double) {
  throw std::invalid_argument(
      "normalized_tail: Gaussian jump laws are simulation inputs, not reference quantiles");
}

inline ReferenceQuantile normalized_tail(const JumpMeasure& m, double rho) {
  return std::visit(
      [rho](const auto& v) -> ReferenceQuantile { return normalized_tail(v, rho); }, m);
}

// Convenience accessor for both partial integrals of a reference quantile.
template <QuantileModel R>
std::pair<double, double> partial_integrals(const R& ref, double a, double b) {
  return {ref.partial_q1(a, b), ref.partial_q2(a, b)};
}

}  // namespace levytail
