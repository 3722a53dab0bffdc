#pragma once
#include "lieblab/scalar_fn.hpp"

namespace lieblab {

// Bracketed one-dimensional search used by the conjugate transforms: a coarse
// log-spaced scan over [bracket_lo, bracket_hi] followed by golden-section
// refinement between the neighbours of the best coarse point.
struct SearchConfig {
  double bracket_lo = 1e-6;
  double bracket_hi = 1e6;
  int coarse_points = 121;
  int refine_iters = 80;
  double tol = 1e-9;  // argument tolerance for early termination
};

// hat(f)(t) = sup_{x>0} { x t - f(x) } for f non-decreasing convex with
// f(x)/x -> inf. When the supremum sits at the lower bracket edge the limit
// value -f(0+) is returned (approximated at bracket_lo); running off the
// upper edge raises BracketError.
double hat_transform(const ScalarFn& f, double t, const SearchConfig& cfg = {});

// check(f)(t) = inf_{x>0} { x t - f(x) } for f non-decreasing concave with
// f(x)/x -> 0. Boundary behaviour mirrors hat_transform.
double check_transform(const ScalarFn& f, double t, const SearchConfig& cfg = {});

// The transforms as functions of t, with the class flags they carry by
// construction (hat stays in the convex class, check in the concave class).
ScalarFn hat_fn(const ScalarFn& f, const SearchConfig& cfg = {});
ScalarFn check_fn(const ScalarFn& f, const SearchConfig& cfg = {});

// Multiplicative mollification
//   f_eps(x) = int_{-1}^{1} phi(t) f(x e^{-eps t}) dt
// with the bump phi(t) = c exp(-1/(1-t^2)) normalized to unit mass, evaluated
// by 64-node Gauss-Legendre quadrature. Preserves the declared monotonicity
// and convexity flags of f.
ScalarFn mollify(const ScalarFn& f, double eps);

// Discrete mass of the normalized bump under an n-node rule (test hook).
double bump_mass(int nodes);

}  // namespace lieblab
