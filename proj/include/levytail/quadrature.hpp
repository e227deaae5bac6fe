// Adaptive Simpson quadrature with an absolute tolerance and a hard
// evaluation budget.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "levytail/errors.hpp"

namespace levytail {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_evals = 1'000'000;
};

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth, std::size_t& evals,
                       std::size_t max_evals) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (evals + 2 > max_evals) {
    throw QuadratureError("adaptive Simpson: evaluation budget exhausted");
  }
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw QuadratureError("adaptive Simpson: recursion depth exhausted");
  }
  if (std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals,
                         max_evals) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals,
                         max_evals);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, QuadratureOptions opts = {}) {
  if (!(a <= b)) throw std::invalid_argument("adaptive_simpson: a > b");
  if (a == b) return 0.0;
  std::size_t evals = 3;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, opts.abs_tol, 52,
                                 evals, opts.max_evals);
}

}  // namespace levytail
