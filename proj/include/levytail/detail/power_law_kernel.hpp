// Survival-space evaluation of the truncated empirical Wasserstein kernel
// against a power-law reference quantile.
//
// The order-statistic formula sums, per sample panel ((i-1)/n, i/n], the exact
// integral of (X_i - F^{-1}(u))^2 over the non-truncated window [l_i, r_i].
// Evaluating that window integral as A X^2 + B X + C cancels catastrophically
// once X is large (the three terms grow like X^2/n while their sum stays
// below s/n), so this kernel works with the antiderivative grouped around
// (v - X), where v = F^{-1}(u):
//
//   int (X - v)^2 dF(v) = [ -S(v)(v-X)^2 + 2/(1-a) S(v)(v-X)v
//                           - 2/((1-a)(2-a)) S(v) v^2 ]  (a = alpha != 1, 2)
//
// with S(v) = (rho/v)^alpha the survival function.  Boundaries are carried as
// exact survivals (n-i)/n, so the deep tail keeps full relative precision.

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "levytail/errors.hpp"

namespace levytail::detail {

class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Exact integral of (x - F^{-1}(u))^2 du over a window given by its survival
// levels (s_lo >= s_hi) and the quantile values (v_lo <= v_hi) at both ends.
// v_hi may be +inf (full upper tail, needs alpha > 2).
inline double power_law_window_integral(double alpha, double rho, double x,
                                        double s_lo, double v_lo, double s_hi,
                                        double v_hi) {
  if (!(v_hi > v_lo)) return 0.0;
  const double dv = v_hi - v_lo;
  if (std::fabs(alpha - 1.0) < 1e-8) {
    // rho * [ v - 2 x ln v - x^2 / v ]
    return rho * (dv - 2.0 * x * std::log1p(dv / v_lo) + x * x * dv / (v_hi * v_lo));
  }
  if (std::fabs(alpha - 2.0) < 1e-8) {
    // 2 rho^2 * [ ln v + 2 x / v - x^2 / (2 v^2) ]
    return 2.0 * rho * rho *
           (std::log1p(dv / v_lo) - 2.0 * x * dv / (v_hi * v_lo) +
            0.5 * x * x * dv * (v_hi + v_lo) / (v_hi * v_hi * v_lo * v_lo));
  }
  const double one_m = 1.0 - alpha;
  const double two_m = 2.0 - alpha;
  double p1, p2, p3;
  if (std::isinf(v_hi)) {
    // Upper-tail limits vanish only when the second moment exists.
    if (!(alpha > 2.0))
      throw InfiniteMomentError("power-law window integral: infinite second moment");
    p1 = -s_lo * (v_lo - x) * (v_lo - x);
    p2 = -s_lo * (v_lo - x) * v_lo;
    p3 = -s_lo * v_lo * v_lo;
  } else {
    p1 = s_hi * (v_hi - x) * (v_hi - x) - s_lo * (v_lo - x) * (v_lo - x);
    p2 = s_hi * (v_hi - x) * v_hi - s_lo * (v_lo - x) * v_lo;
    // s_hi v_hi^2 - s_lo v_lo^2 = rho^alpha (v_hi^{2-a} - v_lo^{2-a}), evaluated
    // relative to the lower end so that narrow windows do not cancel.
    p3 = s_lo * v_lo * v_lo * std::expm1(two_m * std::log1p(dv / v_lo));
  }
  return -p1 + (2.0 / one_m) * p2 - (2.0 / (one_m * two_m)) * p3;
}

// Shared per-sample precomputation for evaluating the truncated distance at
// many exponents alpha against references anchored at a fixed rho.
//
// Survival-space notation per panel i (1-based):
//   surv_a = (n-i+1)/n   at u = (i-1)/n      surv_b = (n-i)/n   at u = i/n
//   s_hi   = (rho/(x+sqrt(s)))^alpha          s_lo  = (rho/(x-sqrt(s)))^alpha
// The repartition l_i, r_i clamps the cdf values into the panel;
// in survival space that is s_lo' = clamp(s_lo, surv_b, surv_a) and
// s_hi' = clamp(s_hi, surv_b, surv_a).
class PowerLawW2Kernel {
 public:
  PowerLawW2Kernel(const std::vector<double>& sorted_values, double rho, double s)
      : x_(sorted_values), rho_(rho), s_(s), sqrt_s_(std::sqrt(s)) {
    const std::size_t n = x_.size();
    log_surv_.resize(n + 1);  // log_surv_[j] = log((n-j)/n), j = 0..n-1
    log_ratio_hi_.resize(n);
    log_ratio_lo_.resize(n);
    has_lo_.resize(n);
    has_hi_.resize(n);
    const double dn = static_cast<double>(n);
    log_surv_[n] = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      log_surv_[j] = std::log(static_cast<double>(n - j) / dn);
      const double hi_point = x_[j] + sqrt_s_;
      has_hi_[j] = hi_point > rho_;  // otherwise F(x + sqrt(s)) = 0
      log_ratio_hi_[j] = has_hi_[j] ? std::log(rho_ / hi_point) : 0.0;
      const double lo_point = x_[j] - sqrt_s_;
      has_lo_[j] = lo_point > rho_;
      log_ratio_lo_[j] = has_lo_[j] ? std::log(rho_ / lo_point) : 0.0;
    }
  }

  // Truncated distance for the reference PowerLawQuantile(alpha, rho).
  double evaluate(double alpha) const {
    assert(std::isfinite(s_));
    const std::size_t n = x_.size();
    const double dn = static_cast<double>(n);
    KahanSum integral;
    KahanSum covered;
    double v_boundary = rho_;  // quantile at u = 0
    bool v_boundary_valid = true;

    for (std::size_t i = 1; i <= n; ++i) {
      const double x = x_[i - 1];
      const double surv_a = static_cast<double>(n - i + 1) / dn;
      const double surv_b = static_cast<double>(n - i) / dn;
      const double log_sa = log_surv_[i - 1];
      const double log_sb = log_surv_[i];

      const double log_s_hi = has_hi_[i - 1]
                                  ? alpha * log_ratio_hi_[i - 1]
                                  : std::numeric_limits<double>::infinity();
      if (log_s_hi >= log_sa) {
        // r_i collapses to (i-1)/n: the reference already exceeds x + sqrt(s)
        // at the panel start, the whole panel is truncated.
        v_boundary_valid = false;
        continue;
      }
      const double log_s_lo = has_lo_[i - 1] ? alpha * log_ratio_lo_[i - 1] : 0.0;
      const bool lo_binds = has_lo_[i - 1] && log_s_lo < log_sa;
      if (lo_binds && log_s_lo <= log_sb) {
        // l_i collapses to i/n: x - sqrt(s) is above the whole panel.
        v_boundary_valid = false;
        continue;
      }

      double s_lo, v_lo;
      if (lo_binds) {
        s_lo = std::exp(log_s_lo);
        v_lo = x - sqrt_s_;
      } else {
        if (!v_boundary_valid) v_boundary = quantile_at(alpha, log_sa);
        s_lo = surv_a;
        v_lo = v_boundary;
      }

      double s_hi, v_hi;
      if (log_s_hi > log_sb) {
        s_hi = std::exp(log_s_hi);
        v_hi = x + sqrt_s_;
        v_boundary_valid = false;
      } else {
        s_hi = surv_b;
        v_hi = quantile_at(alpha, log_sb);
        v_boundary = v_hi;
        v_boundary_valid = true;
      }

      assert(s_lo >= s_hi && s_lo <= surv_a * (1.0 + 1e-12) &&
             s_hi >= surv_b * (1.0 - 1e-12));
      integral.add(power_law_window_integral(alpha, rho_, x, s_lo, v_lo, s_hi, v_hi));
      covered.add(s_lo - s_hi);
    }

    double w = integral.value() + s_ * (1.0 - covered.value());
    if (w < 0.0) w = 0.0;
    return w < s_ ? w : s_;
  }

  // Untruncated distance (s = inf); requires alpha > 2.
  double evaluate_untruncated(double alpha) const {
    if (!(alpha > 2.0))
      throw InfiniteMomentError(
          "empirical Wasserstein-2: reference has infinite second moment (pole)");
    const std::size_t n = x_.size();
    const double dn = static_cast<double>(n);
    KahanSum integral;
    double v_lo = rho_;
    for (std::size_t i = 1; i <= n; ++i) {
      const double x = x_[i - 1];
      const double surv_a = static_cast<double>(n - i + 1) / dn;
      const double surv_b = static_cast<double>(n - i) / dn;
      const double v_hi = (i == n) ? std::numeric_limits<double>::infinity()
                                   : quantile_at(alpha, log_surv_[i]);
      integral.add(power_law_window_integral(alpha, rho_, x, surv_a, v_lo, surv_b, v_hi));
      v_lo = v_hi;
    }
    const double w = integral.value();
    return w > 0.0 ? w : 0.0;
  }

  double rho() const { return rho_; }
  double truncation() const { return s_; }

 private:
  double quantile_at(double alpha, double log_survival) const {
    return rho_ * std::exp(-log_survival / alpha);
  }

  const std::vector<double>& x_;
  double rho_;
  double s_;
  double sqrt_s_;
  std::vector<double> log_surv_;
  std::vector<double> log_ratio_hi_;
  std::vector<double> log_ratio_lo_;
  std::vector<unsigned char> has_lo_;
  std::vector<unsigned char> has_hi_;
};

}  // namespace levytail::detail
