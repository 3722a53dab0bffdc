#include "lieblab/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieblab {

namespace {

double checked_pow(double x, double s) {
  if (x <= 0.0) throw DomainError("power function evaluated at x <= 0");
  return std::pow(x, s);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool FnDescriptor::serializable() const {
  if (std::holds_alternative<std::monostate>(node)) return false;
  if (const auto* c = std::get_if<ComposePowParams>(&node))
    return c->base && c->base->serializable();
  return true;
}

ScalarFn make_power(double s) {
  ScalarFn f;
  f.eval = [s](double x) { return checked_pow(x, s); };
  f.label = "x^" + fmt(s);
  f.flags.non_decreasing = s >= 0.0;
  f.flags.non_increasing = s <= 0.0;
  f.flags.convex = (s >= 1.0 || s <= 0.0);
  f.flags.concave = (s >= 0.0 && s <= 1.0);
  f.flags.op_monotone = (s >= 0.0 && s <= 1.0);
  f.flags.op_monotone_dec = (s >= -1.0 && s <= 0.0);
  f.desc.node = PowerParams{s};
  return f;
}

ScalarFn make_log() {
  ScalarFn f;
  f.eval = [](double x) {
    if (x <= 0.0) throw DomainError("log evaluated at x <= 0");
    return std::log(x);
  };
  f.label = "log";
  f.flags.non_decreasing = true;
  f.flags.concave = true;
  f.flags.op_monotone = true;
  f.desc.node = LogParams{};
  return f;
}

ScalarFn make_affine(double a, double b) {
  ScalarFn f;
  f.eval = [a, b](double x) { return a * x + b; };
  f.label = fmt(a) + "*x+" + fmt(b);
  f.flags.non_decreasing = a >= 0.0;
  f.flags.non_increasing = a <= 0.0;
  f.flags.convex = true;
  f.flags.concave = true;
  f.flags.op_monotone = a >= 0.0;
  f.flags.op_monotone_dec = a <= 0.0;
  f.desc.node = AffineParams{a, b};
  return f;
}

ScalarFn make_pick_integral(const PickParams& p) {
  if (p.b < 0.0) throw InvalidInput("pick integral: slope b must be >= 0");
  for (const auto& atom : p.atoms) {
    if (atom.weight < 0.0)
      throw InvalidInput("pick integral: atom weights must be >= 0");
    if (atom.lambda < 0.0)
      throw InvalidInput("pick integral: atom locations must be >= 0");
  }
  PickParams params = p;
  ScalarFn f;
  f.eval = [params](double x) {
    if (x <= 0.0) throw DomainError("pick integral evaluated at x <= 0");
    double acc = params.h1 + params.b * x;
    for (const auto& atom : params.atoms)
      acc += atom.weight * (x - 1.0) * (1.0 + atom.lambda) / (x + atom.lambda);
    return acc;
  };
  f.label = "pick(h1=" + fmt(p.h1) + ",b=" + fmt(p.b) + "," +
            fmt(double(p.atoms.size())) + " atoms)";
  f.flags.non_decreasing = true;
  f.flags.concave = true;
  f.flags.op_monotone = true;
  f.desc.node = params;
  // sampled necessary checks for operator monotonicity
  const ClassReport rep = classify_sampled(f, audit_grid(), 1.0, 1e-9);
  if (!rep.non_decreasing || !rep.midpoint_concave)
    throw InvalidInput("pick integral failed its sampled screen");
  return f;
}

ScalarFn make_example_a4(const A4Params& p) {
  if (p.alpha <= 0.0) throw InvalidInput("a4: alpha must be > 0");
  ScalarFn f;
  f.desc.node = p;
  switch (p.variant) {
    case A4Variant::shifted_power: {
      if (!(p.r > 0.0 && p.r < 1.0)) throw InvalidInput("a4: need 0 < r < 1");
      if (p.s < 1.0 / (1.0 - p.r))
        throw InvalidInput("a4 shifted_power: need s >= 1/(1-r)");
      const double alpha = p.alpha, s = p.s;
      f.eval = [alpha, s](double x) {
        if (x <= 0.0) throw DomainError("a4 evaluated at x <= 0");
        return x > alpha ? std::pow(x - alpha, s) : 0.0;
      };
      f.label = "(x-" + fmt(alpha) + ")_+^" + fmt(s);
      f.flags.non_decreasing = true;
      f.flags.convex = true;
      break;
    }
    case A4Variant::power_shift: {
      if (!(p.r > 0.0 && p.r < 1.0)) throw InvalidInput("a4: need 0 < r < 1");
      if (p.s < 1.0 / (1.0 - p.r))
        throw InvalidInput("a4 power_shift: need s >= 1/(1-r)");
      const double alpha = p.alpha, s = p.s;
      const double shift = std::pow(alpha, s);
      f.eval = [alpha, s, shift](double x) {
        if (x <= 0.0) throw DomainError("a4 evaluated at x <= 0");
        return x > alpha ? std::pow(x, s) - shift : 0.0;
      };
      f.label = "(x^" + fmt(s) + "-" + fmt(alpha) + "^" + fmt(s) + ")_+";
      f.flags.non_decreasing = true;
      f.flags.convex = true;
      break;
    }
    case A4Variant::two_piece_convex: {
      if (!(p.r > 0.0 && p.r < 1.0)) throw InvalidInput("a4: need 0 < r < 1");
      const double bound = 1.0 / (1.0 - p.r);
      if (p.s1 < bound || p.s2 < bound)
        throw InvalidInput("a4 two_piece_convex: need s1,s2 >= 1/(1-r)");
      const double beta_min =
          (p.s1 / p.s2) * std::pow(p.alpha, p.s1 - p.s2);
      if (p.beta < beta_min)
        throw InvalidInput("a4 two_piece_convex: need beta >= (s1/s2) alpha^(s1-s2)");
      const double alpha = p.alpha, s1 = p.s1, s2 = p.s2, beta = p.beta;
      const double a_s1 = std::pow(alpha, s1), a_s2 = std::pow(alpha, s2);
      f.eval = [alpha, s1, s2, beta, a_s1, a_s2](double x) {
        if (x <= 0.0) throw DomainError("a4 evaluated at x <= 0");
        if (x <= alpha) return std::pow(x, s1);
        return beta * (std::pow(x, s2) - a_s2) + a_s1;
      };
      f.label = "two_piece_convex(s1=" + fmt(s1) + ",s2=" + fmt(s2) + ")";
      f.flags.non_decreasing = true;
      f.flags.convex = true;
      break;
    }
    case A4Variant::capped: {
      if (!(p.r > 0.0)) throw InvalidInput("a4 capped: need r > 0");
      if (!(p.s > 0.0 && p.s <= 1.0 / (1.0 + p.r)))
        throw InvalidInput("a4 capped: need 0 < s <= 1/(1+r)");
      const double alpha = p.alpha, s = p.s;
      const double knot = std::pow(s / alpha, 1.0 / (1.0 - s));
      const double cap = (1.0 - s) * std::pow(s / alpha, s / (1.0 - s));
      f.eval = [alpha, s, knot, cap](double x) {
        if (x <= 0.0) throw DomainError("a4 evaluated at x <= 0");
        return x <= knot ? std::pow(x, s) - alpha * x : cap;
      };
      f.label = "capped(x^" + fmt(s) + "-" + fmt(alpha) + "x)";
      f.flags.non_decreasing = true;
      f.flags.concave = true;
      break;
    }
    case A4Variant::two_piece_concave: {
      if (!(p.r > 0.0)) throw InvalidInput("a4: need r > 0");
      const double bound = 1.0 / (1.0 + p.r);
      if (!(p.s1 > 0.0 && p.s1 <= bound) || !(p.s2 > 0.0 && p.s2 <= bound))
        throw InvalidInput("a4 two_piece_concave: need 0 < s1,s2 <= 1/(1+r)");
      const double beta_max =
          (p.s1 / p.s2) * std::pow(p.alpha, p.s1 - p.s2);
      if (!(p.beta > 0.0 && p.beta <= beta_max))
        throw InvalidInput("a4 two_piece_concave: need 0 < beta <= (s1/s2) alpha^(s1-s2)");
      const double alpha = p.alpha, s1 = p.s1, s2 = p.s2, beta = p.beta;
      const double a_s1 = std::pow(alpha, s1), a_s2 = std::pow(alpha, s2);
      f.eval = [alpha, s1, s2, beta, a_s1, a_s2](double x) {
        if (x <= 0.0) throw DomainError("a4 evaluated at x <= 0");
        if (x <= alpha) return std::pow(x, s1);
        return beta * (std::pow(x, s2) - a_s2) + a_s1;
      };
      f.label = "two_piece_concave(s1=" + fmt(s1) + ",s2=" + fmt(s2) + ")";
      f.flags.non_decreasing = true;
      f.flags.concave = true;
      break;
    }
  }
  return f;
}

FnDescriptor compose_pow_desc(double c, const FnDescriptor& base) {
  if (const auto* pw = std::get_if<PowerParams>(&base.node))
    return FnDescriptor{PowerParams{pw->s * c}};
  if (const auto* cp = std::get_if<ComposePowParams>(&base.node)) {
    if (!cp->base) throw InvalidInput("compose_pow: missing base descriptor");
    return compose_pow_desc(c * cp->c, *cp->base);
  }
  if (std::abs(c - 1.0) <= 1e-12) return base;
  ComposePowParams out;
  out.c = c;
  out.base = std::make_shared<FnDescriptor>(base);
  return FnDescriptor{out};
}

ScalarFn compose_pow(double c, const ScalarFn& base) {
  if (std::holds_alternative<std::monostate>(base.desc.node)) {
    // programmatic base, compose directly
    ScalarFn f;
    auto ev = base.eval;
    f.eval = [c, ev](double x) { return ev(checked_pow(x, c)); };
    f.label = base.label + "(x^" + fmt(c) + ")";
    const FnFlags& bf = base.flags;
    f.flags.non_decreasing =
        (bf.non_decreasing && c > 0.0) || (bf.non_increasing && c < 0.0);
    f.flags.non_increasing =
        (bf.non_increasing && c > 0.0) || (bf.non_decreasing && c < 0.0);
    return f;
  }
  return make_from_descriptor(compose_pow_desc(c, base.desc));
}

ScalarFn make_from_descriptor(const FnDescriptor& d) {
  if (const auto* pw = std::get_if<PowerParams>(&d.node)) return make_power(pw->s);
  if (std::holds_alternative<LogParams>(d.node)) return make_log();
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return make_affine(af->a, af->b);
  if (const auto* pk = std::get_if<PickParams>(&d.node))
    return make_pick_integral(*pk);
  if (const auto* a4 = std::get_if<A4Params>(&d.node))
    return make_example_a4(*a4);
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node)) {
    if (!cp->base) throw InvalidInput("compose_pow: missing base descriptor");
    ScalarFn base = make_from_descriptor(*cp->base);
    const double c = cp->c;
    ScalarFn f;
    auto ev = base.eval;
    f.eval = [c, ev](double x) { return ev(checked_pow(x, c)); };
    f.label = base.label + "(x^" + fmt(c) + ")";
    const FnFlags& bf = base.flags;
    f.flags.non_decreasing =
        (bf.non_decreasing && c > 0.0) || (bf.non_increasing && c < 0.0);
    f.flags.non_increasing =
        (bf.non_increasing && c > 0.0) || (bf.non_decreasing && c < 0.0);
    f.desc = d;
    return f;
  }
  throw InvalidInput("function descriptor is not reconstructible");
}

const std::vector<double>& audit_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(201);
    for (int i = 0; i <= 200; ++i)
      g[size_t(i)] = std::pow(10.0, -3.0 + 6.0 * i / 200.0);
    return g;
  }();
  return grid;
}

ClassReport classify_sampled(const ScalarFn& f, const std::vector<double>& grid,
                             double gamma, double tol) {
  if (grid.size() < 3) throw InvalidInput("classify_sampled: grid too small");
  const size_t n = grid.size();
  std::vector<double> gx(n);
  auto comp = [&](double x) { return f.eval(std::pow(x, gamma)); };
  for (size_t i = 0; i < n; ++i) gx[i] = comp(grid[i]);

  ClassReport rep;
  rep.min_value = *std::min_element(gx.begin(), gx.end());

  double worst_inc = 0.0, worst_dec = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double scale = 1.0 + std::abs(gx[i]) + std::abs(gx[i + 1]);
    const double d = (gx[i + 1] - gx[i]) / scale;
    worst_inc = std::min(worst_inc, d);
    worst_dec = std::min(worst_dec, -d);
  }
  rep.worst_increase_margin = worst_inc;
  rep.worst_decrease_margin = worst_dec;
  rep.non_decreasing = worst_inc >= -tol;
  rep.non_increasing = worst_dec >= -tol;

  static const int strides[] = {1, 2, 5, 10, 25, 50, 100, 200};
  double worst_cvx = 0.0, worst_ccv = 0.0;
  for (int k : strides) {
    for (size_t i = 0; i + size_t(k) < n; ++i) {
      const size_t j = i + size_t(k);
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double gm = comp(mid);
      const double avg = 0.5 * (gx[i] + gx[j]);
      const double scale = 1.0 + std::abs(gx[i]) + std::abs(gx[j]);
      worst_cvx = std::min(worst_cvx, (avg - gm) / scale);
      worst_ccv = std::min(worst_ccv, (gm - avg) / scale);
    }
  }
  rep.worst_convex_margin = worst_cvx;
  rep.worst_concave_margin = worst_ccv;
  rep.midpoint_convex = worst_cvx >= -tol;
  rep.midpoint_concave = worst_ccv >= -tol;
  return rep;
}

}  // namespace lieblab
