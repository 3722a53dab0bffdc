#include "lieblab/operator_mean.hpp"

#include <cmath>
#include <sstream>

namespace lieblab {

namespace {

void screen_rep(const ScalarFn& rep, const std::string& kind) {
  const double at1 = rep.eval(1.0);
  if (std::abs(at1 - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "operator mean '" << kind << "': representing function has m(1)="
       << at1 << ", expected 1";
    throw InvalidInput(os.str());
  }
  const ClassReport r = classify_sampled(rep, audit_grid(), 1.0);
  if (!r.non_decreasing || !r.midpoint_concave || r.min_value < 0.0) {
    std::ostringstream os;
    os << "operator mean '" << kind
       << "': representing function fails the sampled screen"
       << " (non_decreasing=" << r.non_decreasing
       << ", midpoint_concave=" << r.midpoint_concave
       << ", min_value=" << r.min_value << ")";
    throw InvalidInput(os.str());
  }
}

}  // namespace

OperatorMean arithmetic_mean() {
  OperatorMean m;
  m.rep = make_affine(0.5, 0.5);
  m.rep.label = "arithmetic";
  m.kind = "arithmetic";
  m.alpha = 1.0;
  screen_rep(m.rep, m.kind);
  return m;
}

OperatorMean geometric_mean() {
  OperatorMean m;
  m.rep = make_power(0.5);
  m.rep.label = "geometric";
  m.kind = "geometric";
  screen_rep(m.rep, m.kind);
  return m;
}

OperatorMean harmonic_mean() {
  PickParams p;
  p.h1 = 1.0;
  p.b = 0.0;
  p.atoms = {{1.0, 0.5}};
  OperatorMean m;
  m.rep = make_pick_integral(p);
  m.rep.label = "harmonic";
  m.kind = "harmonic";
  m.alpha = -1.0;
  m.pick = p;
  screen_rep(m.rep, m.kind);
  return m;
}

OperatorMean power_mean(double a) {
  if (!(a >= -1.0 && a <= 1.0))
    throw InvalidInput("power_mean: parameter must lie in [-1, 1]");
  if (a == 0.0) {
    OperatorMean m = geometric_mean();
    m.kind = "power";
    m.alpha = 0.0;
    return m;
  }
  OperatorMean m;
  m.rep.eval = [a](double x) {
    return std::pow(0.5 * (1.0 + std::pow(x, a)), 1.0 / a);
  };
  std::ostringstream os;
  os << "power_mean(" << a << ")";
  m.rep.label = os.str();
  m.rep.flags.non_decreasing = true;
  m.rep.flags.concave = true;
  m.rep.flags.op_monotone = true;
  m.kind = "power";
  m.alpha = a;
  screen_rep(m.rep, m.kind);
  return m;
}

OperatorMean mean_from_pick(const PickParams& p) {
  ScalarFn h = make_pick_integral(p);
  const double at1 = h.eval(1.0);
  if (!(at1 > 0.0))
    throw InvalidInput("mean_from_pick: value at 1 must be positive");
  OperatorMean m;
  auto ev = h.eval;
  m.rep.eval = [ev, at1](double x) { return ev(x) / at1; };
  m.rep.label = "pick_mean";
  m.rep.flags = h.flags;
  m.kind = "pick";
  m.pick = p;
  screen_rep(m.rep, m.kind);
  return m;
}

OperatorMean adjoint_mean(const OperatorMean& m) {
  OperatorMean out;
  auto ev = m.rep.eval;
  out.rep.eval = [ev](double x) { return 1.0 / ev(1.0 / x); };
  out.rep.label = "adjoint(" + m.rep.label + ")";
  out.rep.flags.non_decreasing = true;
  out.rep.flags.concave = true;
  out.rep.flags.op_monotone = true;
  out.kind = "adjoint";
  out.adjoint_base = std::make_shared<const OperatorMean>(m);
  screen_rep(out.rep, out.kind);
  return out;
}

PosDefMatrix mean_apply(const OperatorMean& m, const PosDefMatrix& a,
                        const PosDefMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidInput("mean_apply: dimension mismatch");
  if (m.adjoint_base) {
    return pd_inverse(
        mean_apply(*m.adjoint_base, pd_inverse(a), pd_inverse(b)));
  }
  const PosDefMatrix rt = mat_power(a, 0.5);
  const PosDefMatrix irt = mat_power(a, -0.5);
  const PosDefMatrix x =
      PosDefMatrix(HermMatrix(hermitize(irt.mat() * b.mat() * irt.mat())));
  const HermMatrix mx = apply_fn(x, m.rep);
  return PosDefMatrix(HermMatrix(hermitize(rt.mat() * mx.mat() * rt.mat())));
}

}  // namespace lieblab
