// Coupling semimetric T_lambda and coupling distance between Levy measures,
// and the explicit path-space bound for additive-noise jump diffusions.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "levytail/measures.hpp"
#include "levytail/quadrature.hpp"
#include "levytail/reference.hpp"
#include "levytail/wasserstein.hpp"

namespace levytail {

// T~_lambda(nu1, nu2) = lambda^{1/2} W~_{2,s}(nu1 at rho1(lambda), nu2 at
// rho2(lambda)); always <= (lambda s)^{1/2}.
inline double coupling_semimetric(const JumpMeasure& nu1, const JumpMeasure& nu2,
                                  double lambda, TruncationLevel s = {},
                                  QuadratureOptions opts = {}) {
  if (!(lambda > 0.0)) throw std::invalid_argument("coupling_semimetric: lambda <= 0");
  if (lambda > total_mass(nu1) || lambda > total_mass(nu2))
    throw std::invalid_argument("coupling_semimetric: lambda exceeds a total mass");
  const ReferenceQuantile tail1 = normalized_tail(nu1, cutoff_for_intensity(nu1, lambda));
  const ReferenceQuantile tail2 = normalized_tail(nu2, cutoff_for_intensity(nu2, lambda));
  const double w2 = measure_distance_truncated(tail1, tail2, s, opts);
  return std::sqrt(lambda * w2);
}

inline std::vector<double> default_lambda_grid() {
  std::vector<double> grid(64);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = std::pow(10.0, -2.0 + 5.0 * static_cast<double>(k) /
                                 static_cast<double>(grid.size() - 1));
  }
  return grid;
}

// Grid approximation of T(nu1, nu2) = sup_lambda T_lambda.  The max over a
// finite grid is a lower bound of the sup; the grid is reported so callers
// can judge the approximation.
struct CouplingDistanceResult {
  double value = 0.0;
  double lambda_at_max = 0.0;
  std::vector<double> lambda_grid;
  std::vector<double> semimetric;
};

inline CouplingDistanceResult coupling_distance(const JumpMeasure& nu1,
                                                const JumpMeasure& nu2,
                                                TruncationLevel s,
                                                std::vector<double> lambda_grid,
                                                QuadratureOptions opts = {}) {
  const double cap = std::min(total_mass(nu1), total_mass(nu2));
  std::vector<double> grid;
  for (double lambda : lambda_grid) {
    if (lambda > 0.0 && lambda <= cap) grid.push_back(lambda);
  }
  if (grid.empty()) throw std::invalid_argument("coupling_distance: empty lambda grid");
  CouplingDistanceResult result;
  result.lambda_grid = grid;
  result.semimetric.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    result.semimetric[k] = coupling_semimetric(nu1, nu2, grid[k], s, opts);
    if (result.semimetric[k] > result.value) {
      result.value = result.semimetric[k];
      result.lambda_at_max = grid[k];
    }
  }
  if (result.lambda_at_max == 0.0) result.lambda_at_max = grid.front();
  return result;
}

inline CouplingDistanceResult coupling_distance(const JumpMeasure& nu1,
                                                const JumpMeasure& nu2,
                                                TruncationLevel s = {}) {
  return coupling_distance(nu1, nu2, s, default_lambda_grid());
}

// Characteristic triplet (a, A, nu) of an additive-noise jump diffusion.
struct LevyTriplet {
  double drift = 0.0;       // a
  double diffusion = 0.0;   // A (variance, >= 0)
  JumpMeasure jump_measure;

  LevyTriplet(double drift_, double diffusion_, JumpMeasure jump_measure_)
      : drift(drift_), diffusion(diffusion_), jump_measure(std::move(jump_measure_)) {
    if (diffusion < 0.0) throw std::invalid_argument("LevyTriplet: A must be >= 0");
  }
};

// The seven explicit constants of the path-space estimate; stored as their
// exact expressions and evaluated in double precision.  The two-decimal
// rounded row exists for cross-checks only.
struct BoundConstants {
  double c0, c1, c2, c3, c4, c5, c6;

  static BoundConstants exact() {
    const double pi = 4.0 * std::atan(1.0);
    const double pow3_34 = std::pow(3.0, 0.75);
    return {std::atan(0.5),       4.0 / pi,  pow3_34 / 2.0, pi + pow3_34,
            (pi + pow3_34) / 2.0, std::pow(3.0, 1.5), 4.0 * pi * pi};
  }

  static BoundConstants rounded() {
    return {0.46, 1.27, 1.40, 5.42, 2.28, 5.20, 39.48};
  }
};

// Inputs to the bound that do not depend on the constants.  Exposed so the
// monotonicity of the assembled bound can be probed term by term.
struct TheoremBoundTerms {
  double x_gap_sq = 0.0;       // |x1 - x2|^2 (capped at 1 inside the bound)
  double drift_gap = 0.0;      // |a1 - a2|
  double sigma_gap_sq = 0.0;   // (sqrt(A1) - sqrt(A2))^2
  double u1 = 0.0;             // U_lambda(nu1)
  double u2 = 0.0;             // U_lambda(nu2)
  double t_lambda = 0.0;       // T~_lambda(nu1, nu2)
  double big_jump_mass = 0.0;  // min(nu1(|u|>1) + nu2(|u|>1), lambda)
  double ell = 0.0;            // one-sided Lipschitz constant of the drift f
};

struct TheoremBoundResult {
  double q1 = 0.0;
  double q2 = 0.0;
  double bound = 0.0;
  double t_lambda = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

inline TheoremBoundResult assemble_theorem_bound(const TheoremBoundTerms& t,
                                                 const BoundConstants& c) {
  TheoremBoundResult out;
  out.t_lambda = t.t_lambda;
  out.u1 = t.u1;
  out.u2 = t.u2;
  const double x_term = std::min(t.x_gap_sq, 1.0);
  out.q1 = 2.0 * x_term +
           c.c1 * (c.c2 * t.drift_gap + t.sigma_gap_sq + t.u1 + t.u2 +
                   c.c3 * t.t_lambda * t.t_lambda +
                   c.c4 * std::sqrt(t.big_jump_mass) * t.t_lambda);
  out.q2 = c.c1 * std::sqrt(c.c5 * t.sigma_gap_sq +
                            c.c6 * (t.u1 + t.u2 + t.t_lambda * t.t_lambda));
  out.bound = out.q1 * std::exp(t.ell / c.c0) + out.q2;
  return out;
}

inline TheoremBoundTerms theorem_bound_terms(const LevyTriplet& t1,
                                             const LevyTriplet& t2, double x1,
                                             double x2, double ell, double lambda,
                                             TruncationLevel s = TruncationLevel(1.0),
                                             QuadratureOptions opts = {}) {
  if (!(ell > 0.0)) throw std::invalid_argument("theorem_bound: ell must be > 0");
  TheoremBoundTerms terms;
  terms.x_gap_sq = (x1 - x2) * (x1 - x2);
  terms.drift_gap = std::fabs(t1.drift - t2.drift);
  const double ds = std::sqrt(t1.diffusion) - std::sqrt(t2.diffusion);
  terms.sigma_gap_sq = ds * ds;
  terms.u1 = small_jump_variance(t1.jump_measure,
                                 cutoff_for_intensity(t1.jump_measure, lambda));
  terms.u2 = small_jump_variance(t2.jump_measure,
                                 cutoff_for_intensity(t2.jump_measure, lambda));
  terms.t_lambda = coupling_semimetric(t1.jump_measure, t2.jump_measure, lambda, s, opts);
  terms.big_jump_mass = std::min(
      tail_mass(t1.jump_measure, 1.0) + tail_mass(t2.jump_measure, 1.0), lambda);
  terms.ell = ell;
  return terms;
}

// Explicit upper bound on W^2_{2,d~}(Law(X1), Law(X2)) for two additive-noise
// jump diffusions with one-sided Lipschitz drift constant ell, at intensity
// level lambda.
inline TheoremBoundResult theorem_bound(const LevyTriplet& t1, const LevyTriplet& t2,
                                        double x1, double x2, double ell,
                                        double lambda,
                                        TruncationLevel s = TruncationLevel(1.0),
                                        const BoundConstants& constants =
                                            BoundConstants::exact()) {
  return assemble_theorem_bound(theorem_bound_terms(t1, t2, x1, x2, ell, lambda, s),
                                constants);
}

}  // namespace levytail
