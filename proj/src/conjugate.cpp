#include "lieblab/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace lieblab {

namespace {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(static_cast<size_t>(n));
  q.weights.resize(static_cast<size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[static_cast<size_t>(i)] = -x;
    q.nodes[static_cast<size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[static_cast<size_t>(i)] = w;
    q.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return q;
}

const Quadrature& gl64() {
  static const Quadrature q = gauss_legendre(64);
  return q;
}

double bump_raw(double t) { return std::exp(-1.0 / (1.0 - t * t)); }

// Normalizer computed with the same 64-node rule used by mollify, so the
// discrete bump mass is exactly 1 and constants mollify to themselves.
double bump_norm() {
  static const double c = [] {
    const Quadrature& q = gl64();
    double acc = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i)
      acc += q.weights[i] * bump_raw(q.nodes[i]);
    return 1.0 / acc;
  }();
  return c;
}

enum class Goal { maximize, minimize };

double conj_search(const ScalarFn& f, double t, Goal goal, const SearchConfig& cfg,
                   const char* name) {
  if (cfg.coarse_points < 3 || cfg.bracket_lo <= 0.0 ||
      cfg.bracket_hi <= cfg.bracket_lo)
    throw InvalidInput("conjugate search: malformed bracket");
  const double sign = goal == Goal::maximize ? 1.0 : -1.0;
  auto obj = [&](double x) { return sign * (x * t - f.eval(x)); };

  const int n = cfg.coarse_points;
  const double lr = std::log(cfg.bracket_lo), hr = std::log(cfg.bracket_hi);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<double> xs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = std::exp(lr + (hr - lr) * i / (n - 1.0));
    const double v = obj(xs[static_cast<size_t>(i)]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == n - 1) {
    std::ostringstream os;
    os << name << ": optimum ran off the upper bracket edge at t=" << t
       << " for f=" << f.label << "; the transform diverges on this input";
    throw BracketError(os.str());
  }

  double a = xs[static_cast<size_t>(std::max(best - 1, 0))];
  double b = xs[static_cast<size_t>(best + 1)];
  static const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = obj(x1), f2 = obj(x2);
  for (int it = 0; it < cfg.refine_iters && (b - a) > cfg.tol * std::max(1.0, a);
       ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = obj(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = obj(x2);
    }
  }
  double refined = std::max(std::max(f1, f2), best_val);
  if (best == 0) {
    // supremum/infimum sits at the lower edge: the limit value is -f(0+)
    refined = std::max(refined, sign * -f.eval(cfg.bracket_lo));
  }
  return sign * refined;
}

}  // namespace

double hat_transform(const ScalarFn& f, double t, const SearchConfig& cfg) {
  if (f.flags.non_increasing && !f.flags.non_decreasing)
    throw InvalidInput("hat_transform: f is declared non-increasing");
  if (f.flags.concave && !f.flags.convex)
    throw InvalidInput("hat_transform: f is declared concave, not convex");
  return conj_search(f, t, Goal::maximize, cfg, "hat_transform");
}

double check_transform(const ScalarFn& f, double t, const SearchConfig& cfg) {
  if (f.flags.non_increasing && !f.flags.non_decreasing)
    throw InvalidInput("check_transform: f is declared non-increasing");
  if (f.flags.convex && !f.flags.concave)
    throw InvalidInput("check_transform: f is declared convex, not concave");
  return conj_search(f, t, Goal::minimize, cfg, "check_transform");
}

ScalarFn hat_fn(const ScalarFn& f, const SearchConfig& cfg) {
  ScalarFn out;
  ScalarFn base = f;
  out.eval = [base, cfg](double t) { return hat_transform(base, t, cfg); };
  out.label = "hat(" + f.label + ")";
  out.flags.non_decreasing = true;
  out.flags.convex = true;
  return out;
}

ScalarFn check_fn(const ScalarFn& f, const SearchConfig& cfg) {
  ScalarFn out;
  ScalarFn base = f;
  out.eval = [base, cfg](double t) { return check_transform(base, t, cfg); };
  out.label = "check(" + f.label + ")";
  out.flags.non_decreasing = true;
  out.flags.concave = true;
  return out;
}

ScalarFn mollify(const ScalarFn& f, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("mollify: eps must be > 0");
  ScalarFn out;
  auto ev = f.eval;
  const double c = bump_norm();
  out.eval = [ev, eps, c](double x) {
    const Quadrature& q = gl64();
    double acc = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i)
      acc += q.weights[i] * c * bump_raw(q.nodes[i]) *
             ev(x * std::exp(-eps * q.nodes[i]));
    return acc;
  };
  std::ostringstream os;
  os << "mollify(" << f.label << "," << eps << ")";
  out.label = os.str();
  out.flags = f.flags;
  return out;
}

double bump_mass(int nodes) {
  const Quadrature q = gauss_legendre(nodes);
  const double c = bump_norm();
  double acc = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i)
    acc += q.weights[i] * c * bump_raw(q.nodes[i]);
  return acc;
}

}  // namespace lieblab
