#pragma once
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lieblab/errors.hpp"

namespace lieblab {

// Declared analytic class of a function. Flags are set only when they hold by
// construction; absence of a flag means "unknown", not "false".
struct FnFlags {
  bool non_decreasing = false;
  bool non_increasing = false;
  bool convex = false;
  bool concave = false;
  bool op_monotone = false;      // operator monotone on (0, inf)
  bool op_monotone_dec = false;  // operator monotone decreasing on (0, inf)
};

struct PowerParams {
  double s = 1.0;
};
struct LogParams {};
struct AffineParams {
  double a = 1.0;
  double b = 0.0;
};

// One atom of the discretized Pick integral representation
//   h(x) = h1 + b*x + sum_i w_i * (x-1)(1+lambda_i)/(x+lambda_i).
struct PickAtom {
  double lambda = 0.0;
  double weight = 0.0;
};
struct PickParams {
  double h1 = 1.0;
  double b = 0.0;
  std::vector<PickAtom> atoms;
};

// Piecewise example families. Variant constraints are validated against the
// exponent parameter r at construction:
//   shifted_power    f(x) = max(x - alpha, 0)^s,        s  >= 1/(1-r), 0<r<1
//   power_shift      f(x) = max(x^s - alpha^s, 0),      s  >= 1/(1-r), 0<r<1
//   two_piece_convex x^s1 on (0,alpha], beta(x^s2 - alpha^s2) + alpha^s1
//                    beyond; s1,s2 >= 1/(1-r), beta >= (s1/s2) alpha^(s1-s2)
//   capped           x^s - alpha x up to the knot (s/alpha)^(1/(1-s)), then
//                    constant (1-s)(s/alpha)^(s/(1-s));  0 < s <= 1/(1+r), r>0
//   two_piece_concave  same two-piece shape with 0 < s1,s2 <= 1/(1+r) and
//                    0 < beta <= (s1/s2) alpha^(s1-s2)
enum class A4Variant {
  shifted_power,
  power_shift,
  two_piece_convex,
  capped,
  two_piece_concave
};
struct A4Params {
  A4Variant variant = A4Variant::capped;
  double r = 0.5;
  double alpha = 1.0;
  double s = 0.5;
  double s1 = 0.5;
  double s2 = 0.5;
  double beta = 0.5;
};

struct FnDescriptor;
struct ComposePowParams {
  double c = 1.0;
  std::shared_ptr<const FnDescriptor> base;
};

using FnNode = std::variant<std::monostate, PowerParams, LogParams,
                            AffineParams, PickParams, A4Params,
                            ComposePowParams>;

// Serializable structure of a function. monostate marks a programmatic
// function (e.g. a mollification) that cannot round-trip through JSON.
struct FnDescriptor {
  FnNode node;
  bool serializable() const;
};

// Evaluable real function on (0, inf) with declared class flags and an
// optional descriptor for reconstruction.
struct ScalarFn {
  std::function<double(double)> eval;
  std::string label;
  FnFlags flags;
  FnDescriptor desc;
  double operator()(double x) const { return eval(x); }
};

ScalarFn make_power(double s);
ScalarFn make_log();
ScalarFn make_affine(double a, double b);

// Throws InvalidInput if b < 0, any weight < 0, or any lambda < 0. The result
// is operator monotone by construction and passes the sampled screen.
ScalarFn make_pick_integral(const PickParams& p);

// Throws InvalidInput when the variant constraints are violated.
ScalarFn make_example_a4(const A4Params& p);

ScalarFn make_from_descriptor(const FnDescriptor& d);

// Descriptor for x -> base(x^c). Flattens nested compositions and powers;
// a total exponent within 1e-12 of 1 collapses to the base function.
FnDescriptor compose_pow_desc(double c, const FnDescriptor& base);
ScalarFn compose_pow(double c, const ScalarFn& base);

// Sampled classification report. Margins are normalized by
// 1 + |value| + |value| of the points entering each comparison; the worst
// (most negative) margin for each property is reported.
struct ClassReport {
  bool non_decreasing = false;
  bool non_increasing = false;
  bool midpoint_convex = false;
  bool midpoint_concave = false;
  double worst_increase_margin = 0.0;
  double worst_decrease_margin = 0.0;
  double worst_convex_margin = 0.0;
  double worst_concave_margin = 0.0;
  double min_value = 0.0;
};

// Monotonicity and midpoint convexity/concavity screen for x -> f(x^gamma)
// sampled on the grid. Necessary-condition screening only; it never
// certifies operator monotonicity.
ClassReport classify_sampled(const ScalarFn& f, const std::vector<double>& grid,
                             double gamma, double tol = 1e-9);

// 201 log-spaced points on [1e-3, 1e3], the standard audit grid.
const std::vector<double>& audit_grid();

}  // namespace lieblab
