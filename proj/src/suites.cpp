#include "lieblab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace lieblab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const char* dir_name(Direction d) {
  return d == Direction::concave ? "concave" : "convex";
}

PickParams pick_basic() {
  PickParams p;
  p.h1 = 1.0;
  p.b = 0.0;
  p.atoms = {{1.0, 0.5}};
  return p;  // 2x/(x+1)
}

PickParams pick_rich() {
  PickParams p;
  p.h1 = 2.0;
  p.b = 0.1;
  p.atoms = {{0.5, 0.3}, {2.0, 0.2}};
  return p;
}

A4Params a4_capped() {
  A4Params a;
  a.variant = A4Variant::capped;
  a.r = 1.0;
  a.s = 0.4;
  a.alpha = 0.3;
  return a;
}

A4Params a4_tp_concave() {
  A4Params a;
  a.variant = A4Variant::two_piece_concave;
  a.r = 1.0;
  a.s1 = 0.5;
  a.s2 = 0.3;
  a.alpha = 1.0;
  a.beta = 1.0;
  return a;
}

A4Params a4_shifted_power() {
  A4Params a;
  a.variant = A4Variant::shifted_power;
  a.r = 0.5;
  a.s = 2.0;
  a.alpha = 0.5;
  return a;
}

A4Params a4_power_shift() {
  A4Params a;
  a.variant = A4Variant::power_shift;
  a.r = 0.5;
  a.s = 2.0;
  a.alpha = 1.0;
  return a;
}

A4Params a4_tp_convex() {
  A4Params a;
  a.variant = A4Variant::two_piece_convex;
  a.r = 0.5;
  a.s1 = 2.0;
  a.s2 = 3.0;
  a.alpha = 1.0;
  a.beta = 1.0;
  return a;
}

bool a4_concave_variant(const A4Params& a) {
  return a.variant == A4Variant::capped ||
         a.variant == A4Variant::two_piece_concave;
}

// The predicates below certify properties of x -> base(x^t) from the
// function descriptor alone. They are deliberately conservative: a function
// whose class cannot be read off the descriptor is rejected.

bool composite_concave(const FnDescriptor& d, double t) {
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node))
    return cp->base && composite_concave(*cp->base, cp->c * t);
  if (const auto* pw = std::get_if<PowerParams>(&d.node)) {
    const double e = pw->s * t;
    return e > 0.0 && e <= 1.0 + 1e-12;
  }
  if (std::holds_alternative<LogParams>(d.node)) return t > 0.0;
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return af->a >= 0.0 && t > 0.0 && t <= 1.0 + 1e-12;
  if (std::holds_alternative<PickParams>(d.node))
    return t > 0.0 && t <= 1.0 + 1e-12;
  if (const auto* a4 = std::get_if<A4Params>(&d.node))
    return a4_concave_variant(*a4) && t > 0.0 && t <= 1.0 + a4->r + 1e-12;
  return false;
}

bool composite_convex(const FnDescriptor& d, double t) {
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node))
    return cp->base && composite_convex(*cp->base, cp->c * t);
  if (const auto* pw = std::get_if<PowerParams>(&d.node))
    return pw->s * t >= 1.0 - 1e-12;
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return af->a >= 0.0 && t >= 1.0 - 1e-12;
  if (const auto* a4 = std::get_if<A4Params>(&d.node))
    return !a4_concave_variant(*a4) && t >= 1.0 - a4->r - 1e-12;
  return false;
}

bool composite_op_monotone(const FnDescriptor& d, double t) {
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node))
    return cp->base && composite_op_monotone(*cp->base, cp->c * t);
  if (const auto* pw = std::get_if<PowerParams>(&d.node)) {
    const double e = pw->s * t;
    return e >= 0.0 && e <= 1.0 + 1e-12;
  }
  if (std::holds_alternative<LogParams>(d.node)) return t > 0.0;
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return af->a >= 0.0 && t >= 0.0 && t <= 1.0 + 1e-12;
  if (std::holds_alternative<PickParams>(d.node))
    return t >= 0.0 && t <= 1.0 + 1e-12;
  return false;
}

bool composite_op_monotone_dec(const FnDescriptor& d, double t) {
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node))
    return cp->base && composite_op_monotone_dec(*cp->base, cp->c * t);
  if (const auto* pw = std::get_if<PowerParams>(&d.node)) {
    const double e = pw->s * t;
    return e >= -1.0 - 1e-12 && e <= 0.0;
  }
  if (std::holds_alternative<LogParams>(d.node)) return t < 0.0;
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return af->a >= 0.0 && t >= -1.0 - 1e-12 && t <= 0.0;
  if (std::holds_alternative<PickParams>(d.node))
    return t >= -1.0 - 1e-12 && t <= 0.0;
  return false;
}

bool fn_nonnegative(const FnDescriptor& d) {
  if (const auto* cp = std::get_if<ComposePowParams>(&d.node))
    return cp->base && fn_nonnegative(*cp->base);
  if (std::holds_alternative<PowerParams>(d.node)) return true;
  if (const auto* af = std::get_if<AffineParams>(&d.node))
    return af->a >= 0.0 && af->b >= 0.0;
  if (const auto* pk = std::get_if<PickParams>(&d.node)) {
    double lim = pk->h1;  // value at 0+
    for (const auto& at : pk->atoms) {
      if (at.lambda <= 0.0) {
        if (at.weight > 0.0) return false;
        continue;
      }
      lim -= at.weight * (1.0 + at.lambda) / at.lambda;
    }
    return lim >= -1e-12;
  }
  if (std::holds_alternative<A4Params>(d.node)) return true;
  return false;
}

bool in_pos_box(double p, double q) {
  return p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0;
}

bool in_neg_box(double p, double q) {
  return p <= 0.0 && p >= -1.0 && q <= 0.0 && q >= -1.0;
}

const PowerParams* as_power(const FnDescriptor& d) {
  return std::get_if<PowerParams>(&d.node);
}

[[noreturn]] void fail(const std::string& id, const SuitePoint& pt,
                       const std::string& why) {
  throw ConfigError("suite " + id + " point '" + pt.label + "': " + why);
}

void check_common(const std::string& id, const SuitePoint& pt) {
  if (pt.dim < 1 || pt.dim > 16) fail(id, pt, "dim must be in [1, 16]");
  if (pt.kraus_rank < 1) fail(id, pt, "kraus_rank must be >= 1");
  if (!pt.fnl.f.eval) fail(id, pt, "missing function");
}

void check_thm21(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  if (!in_pos_box(p, q) && !in_neg_box(p, q))
    fail(id, pt, "(p,q) outside [0,1]^2 and [-1,0]^2");
  if (p == 0.0 && q == 0.0) fail(id, pt, "(p,q) != (0,0) is required");
  const FnDescriptor& d = pt.fnl.f.desc;
  if (pt.expected == Direction::concave) {
    if (!composite_op_monotone(d, p + q))
      fail(id, pt, "f(x^{p+q}) is not certified operator monotone");
  } else if (!composite_op_monotone_dec(d, p + q)) {
    fail(id, pt, "f(x^{p+q}) is not certified operator monotone decreasing");
  }
}

void check_thm31(const std::string& id, const SuitePoint& pt, bool one_var) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "mean_norm" || !pt.fnl.has_mean || !pt.fnl.has_norm)
    fail(id, pt, "needs the mean_norm form with a mean and a norm");
  if (one_var) {
    if (pt.fnl.arity != 1 || p != q)
      fail(id, pt, "needs arity 1 with equal exponent slots");
    if (std::abs(p) <= 0.0 || std::abs(p) > 1.0)
      fail(id, pt, "|p| must lie in (0, 1]");
  } else if (pt.fnl.arity != 2) {
    fail(id, pt, "needs the two-variable form");
  }
  if (!in_pos_box(p, q) && !in_neg_box(p, q))
    fail(id, pt, "(p,q) outside [0,1]^2 and [-1,0]^2");
  if (p == 0.0 && q == 0.0) fail(id, pt, "(p,q) != (0,0) is required");
  const double gamma =
      in_pos_box(p, q) ? std::max(p, q) : std::min(p, q);
  const FnDescriptor& d = pt.fnl.f.desc;
  if (pt.expected == Direction::concave) {
    if (!is_anti_kind(pt.fnl.norm))
      fail(id, pt, "the concave branch needs a symmetric anti-norm");
    if (!fn_nonnegative(d))
      fail(id, pt, "f must be certified nonnegative on (0, inf)");
    if (!composite_op_monotone(d, gamma))
      fail(id, pt, "f(x^gamma) is not certified operator monotone");
  } else {
    if (is_anti_kind(pt.fnl.norm))
      fail(id, pt, "the convex branch needs a symmetric norm");
    if (!composite_op_monotone_dec(d, gamma))
      fail(id, pt, "f(x^gamma) is not certified operator monotone decreasing");
  }
}

void check_cor42(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "mean_trace" || !pt.fnl.has_mean || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable mean_trace form with a mean");
  if (!in_pos_box(p, q) && !in_neg_box(p, q))
    fail(id, pt, "(p,q) outside [0,1]^2 and [-1,0]^2");
  if (p == 0.0 && q == 0.0) fail(id, pt, "(p,q) != (0,0) is required");
  const double gamma =
      in_pos_box(p, q) ? std::max(p, q) : std::min(p, q);
  const FnDescriptor& d = pt.fnl.f.desc;
  if (pt.expected == Direction::concave) {
    if (!composite_concave(d, gamma))
      fail(id, pt, "f(x^gamma) is not certified non-decreasing concave");
  } else if (!composite_convex(d, -gamma)) {
    fail(id, pt, "f(x^{-gamma}) is not certified non-decreasing convex");
  }
}

void check_cor45(const std::string& id, const SuitePoint& pt) {
  const double r = pt.fnl.p;
  if (pt.fnl.form != "mean_trace" || !pt.fnl.has_mean || pt.fnl.arity != 1 ||
      pt.fnl.p != pt.fnl.q)
    fail(id, pt, "needs the arity-1 mean_trace form with equal slots");
  const FnDescriptor& d = pt.fnl.f.desc;
  if (pt.expected == Direction::concave) {
    if (!(std::abs(r) > 0.0 && std::abs(r) <= 1.0))
      fail(id, pt, "the concave branch needs 0 < |p| <= 1");
    if (!composite_concave(d, r))
      fail(id, pt, "f(x^p) is not certified non-decreasing concave");
  } else {
    if (!(r >= 1.0 && r <= 2.0))
      fail(id, pt, "the convex branch needs 1 <= p <= 2");
    if (!composite_convex(d, r))
      fail(id, pt, "f(x^p) is not certified non-decreasing convex");
  }
}

void check_thm52(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  const FnDescriptor& d = pt.fnl.f.desc;
  if (in_pos_box(p, q)) {
    const double u = 1.0 + std::min(p, q);
    if (pt.expected == Direction::concave) {
      if (!composite_concave(d, u))
        fail(id, pt,
             "f(x^{1+min(p,q)}) is not certified non-decreasing concave");
    } else {
      const PowerParams* pw = as_power(d);
      if (!pw || pw->s >= 0.0)
        fail(id, pt, "the convex branch certifies only powers x^s with s < 0");
    }
  } else if (in_neg_box(p, q) && !(p == 0.0 && q == 0.0)) {
    // slots (-p', -q') encode the inverse-argument rewriting of the
    // functional at (p', q') in [0,1]^2
    const double u = 1.0 - std::max(p, q);
    if (pt.expected == Direction::concave) {
      if (!composite_concave(d, -u))
        fail(id, pt,
             "the rewritten f(x^{1+min(p',q')}) is not certified "
             "non-decreasing concave");
    } else {
      const PowerParams* pw = as_power(d);
      if (!pw || pw->s <= 0.0)
        fail(id, pt,
             "the convex branch certifies only powers x^s with s > 0 on "
             "negative slots");
    }
  } else {
    fail(id, pt, "(p,q) outside [0,1]^2 and [-1,0]^2");
  }
}

void check_thm53(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  if (pt.expected != Direction::convex)
    fail(id, pt, "this suite only predicts convexity");
  const FnDescriptor& d = pt.fnl.f.desc;
  if (p <= 0.0) {
    if (!(p > -1.0))
      fail(id, pt, "needs -1 < p <= 0");
    if (!((q >= -1.0 && q <= 0.0) || (q >= 1.0 && q <= 2.0)))
      fail(id, pt, "needs q in [-1,0] or [1,2]");
    if (!composite_convex(d, 1.0 + p))
      fail(id, pt, "f(x^{1+p}) is not certified non-decreasing convex");
    return;
  }
  // positive first slot: inverse-argument rewriting at p' = -p in (-1, 0]
  if (!(p < 1.0)) fail(id, pt, "rewritten points need the first slot in (0,1)");
  if (q >= 0.0) {
    if (!(q <= 1.0)) fail(id, pt, "rewritten points need q' in [-1,0]");
  } else {
    if (!(q >= -2.0 && q <= -1.0))
      fail(id, pt, "rewritten points with q' in [1,2] need slots in [-2,-1]");
    if (pt.maps != MapsMode::psi_identity && pt.maps != MapsMode::identity)
      fail(id, pt, "q' in [1,2] requires the second map to be the identity");
  }
  if (!composite_convex(d, -(1.0 - p)))
    fail(id, pt,
         "the rewritten f(x^{1+p'}) is not certified non-decreasing convex");
}

void check_thm54(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  if (pt.expected != Direction::convex)
    fail(id, pt, "this suite only predicts convexity");
  const FnDescriptor& d = pt.fnl.f.desc;
  if (p > 0.0) {
    if (!(p > 1.0 && p <= 2.0)) fail(id, pt, "needs 1 < p <= 2");
    if (!(q >= -1.0 && q <= 0.0)) fail(id, pt, "needs q in [-1,0]");
    if (!composite_convex(d, p - 1.0))
      fail(id, pt, "f(x^{p-1}) is not certified non-decreasing convex");
    return;
  }
  // negative first slot: inverse-argument rewriting with the first map fixed
  // to the identity
  if (!(p >= -2.0 && p < -1.0))
    fail(id, pt, "rewritten points need the first slot in [-2,-1)");
  if (!(q >= 0.0 && q <= 1.0))
    fail(id, pt, "rewritten points need the second slot in [0,1]");
  if (pt.maps != MapsMode::phi_identity && pt.maps != MapsMode::identity)
    fail(id, pt, "rewritten points require the first map to be the identity");
  if (!composite_convex(d, p + 1.0))
    fail(id, pt,
         "the rewritten f(x^{p'-1}) is not certified non-decreasing convex");
}

void check_thm56(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  if (pt.expected != Direction::convex)
    fail(id, pt, "this suite only predicts convexity");
  if (std::abs(q - 2.0) > 1e-12) fail(id, pt, "needs q = 2");
  if (!(p >= -1.0 && p <= 0.0)) fail(id, pt, "needs p in [-1,0]");
  const PowerParams* pw = as_power(pt.fnl.f.desc);
  if (!pw) fail(id, pt, "this grid certifies power functions only");
  if (!(pw->s > 0.0 && pw->s < 1.0 - 1e-9))
    fail(id, pt, "needs 0 < s < 1 so f is concave with f(x)/x -> 0");
  if (pw->s * (2.0 + p) < 1.0 - 1e-12)
    fail(id, pt, "needs s >= 1/(2+p) so f(x^{2+p}) is convex");
}

void check_range(const std::string& id, const SuitePoint& pt) {
  const double p = pt.fnl.p, q = pt.fnl.q;
  if (pt.fnl.form != "lieb_trace" || pt.fnl.arity != 2)
    fail(id, pt, "needs the two-variable lieb_trace form");
  if (pt.expected != Direction::convex)
    fail(id, pt, "range suites only predict convexity");
  const PowerParams* pw = as_power(pt.fnl.f.desc);
  if (!pw) fail(id, pt, "range suites certify power functions only");
  const double s = pw->s;
  const double inf = std::numeric_limits<double>::infinity();

  if (id == "range-i") {
    if (in_pos_box(p, q) && s <= 0.0) return;
    if (in_neg_box(p, q) && s >= 0.0) return;
    fail(id, pt, "needs s <= 0 on [0,1]^2 or s >= 0 on [-1,0]^2");
  }
  if (id == "range-ii") {
    double a = 0.0, b = 0.0;
    if (p >= -1.0 && p <= 0.0 && q >= 1.0 && q <= 2.0) {
      a = p;
      b = q;
    } else if (q >= -1.0 && q <= 0.0 && p >= 1.0 && p <= 2.0) {
      a = q;
      b = p;
    } else {
      fail(id, pt, "needs exponents in [-1,0] x [1,2] up to interchange");
    }
    const double lo = std::min(a > -1.0 ? 1.0 / (a + 1.0) : inf,
                               b > 1.0 ? 1.0 / (b - 1.0) : inf);
    if (lo == inf) fail(id, pt, "the bound min{1/(p+1),1/(q-1)} is empty");
    if (s < lo - 1e-12)
      fail(id, pt, "needs s >= min{1/(p+1), 1/(q-1)}");
    return;
  }
  if (id == "range-iii") {
    double a = 0.0, b = 0.0;
    bool mirrored = false;
    if (p >= 0.0 && p <= 1.0 && q >= -2.0 && q <= -1.0) {
      a = p;
      b = q;
    } else if (q >= 0.0 && q <= 1.0 && p >= -2.0 && p <= -1.0) {
      a = q;
      b = p;
      mirrored = true;
    } else {
      fail(id, pt, "needs exponents in [0,1] x [-2,-1] up to interchange");
    }
    const double hi = std::max(a < 1.0 ? 1.0 / (a - 1.0) : -inf,
                               b < -1.0 ? 1.0 / (b + 1.0) : -inf);
    if (hi == -inf) fail(id, pt, "the bound max{1/(p-1),1/(q+1)} is empty");
    if (s > hi + 1e-12)
      fail(id, pt, "needs s <= max{1/(p-1), 1/(q+1)}");
    const MapsMode need = mirrored ? MapsMode::phi_identity
                                   : MapsMode::psi_identity;
    if (pt.maps != need && pt.maps != MapsMode::identity)
      fail(id, pt, "the map on the [-2,-1] slot must be the identity");
    return;
  }
  if (id == "range-iv") {
    double a = 0.0;
    if (std::abs(q - 2.0) <= 1e-12 && p >= -1.0 && p <= 0.0) {
      a = p;
    } else if (std::abs(p - 2.0) <= 1e-12 && q >= -1.0 && q <= 0.0) {
      a = q;
    } else {
      fail(id, pt, "needs one exponent equal to 2 and the other in [-1,0]");
    }
    if (s < 1.0 / (2.0 + a) - 1e-12) fail(id, pt, "needs s >= 1/(2+p)");
    return;
  }
  fail(id, pt, "unknown range suite");
}

FunctionalSpec lieb_fnl(ScalarFn f, double p, double q) {
  FunctionalSpec s;
  s.form = "lieb_trace";
  s.f = std::move(f);
  s.p = p;
  s.q = q;
  return s;
}

FunctionalSpec mean_trace_fnl(ScalarFn f, double p, double q, OperatorMean m) {
  FunctionalSpec s;
  s.form = "mean_trace";
  s.f = std::move(f);
  s.p = p;
  s.q = q;
  s.has_mean = true;
  s.mean = std::move(m);
  return s;
}

FunctionalSpec mean_trace1_fnl(ScalarFn f, double p) {
  FunctionalSpec s = mean_trace_fnl(std::move(f), p, p, arithmetic_mean());
  s.arity = 1;
  return s;
}

FunctionalSpec mean_norm_fnl(ScalarFn f, double p, double q, OperatorMean m,
                             NormSpec n) {
  FunctionalSpec s = mean_trace_fnl(std::move(f), p, q, std::move(m));
  s.form = "mean_norm";
  s.has_norm = true;
  s.norm = std::move(n);
  return s;
}

FunctionalSpec mean_norm1_fnl(ScalarFn f, double p, NormSpec n) {
  FunctionalSpec s = mean_norm_fnl(std::move(f), p, p, arithmetic_mean(),
                                   std::move(n));
  s.arity = 1;
  return s;
}

std::string mean_tag(const OperatorMean& m) {
  if (m.kind == "power") return "power(" + fmt(m.alpha) + ")";
  if (m.kind == "adjoint" && m.adjoint_base)
    return "adjoint(" + m.adjoint_base->kind + ")";
  return m.kind;
}

class GridBuilder {
 public:
  GridBuilder(std::string id, std::vector<int> dims)
      : id_(std::move(id)), dims_(std::move(dims)) {
    spec_.theorem_id = id_;
  }

  int dim_at(size_t k) const { return dims_[k % dims_.size()]; }
  const std::vector<int>& dims() const { return dims_; }

  void add(FunctionalSpec fnl, MapsMode maps, int dim, Direction expected) {
    SuitePoint pt;
    pt.fnl = std::move(fnl);
    pt.maps = maps;
    pt.dim = dim;
    pt.expected = expected;

    json prm;
    prm["p"] = pt.fnl.p;
    prm["q"] = pt.fnl.q;
    prm["f"] = pt.fnl.f.label;
    if (const PowerParams* pw = as_power(pt.fnl.f.desc)) prm["s"] = pw->s;
    if (pt.fnl.f.desc.serializable())
      prm["descriptor"] = to_json(pt.fnl.f.desc);
    if (pt.fnl.arity == 1) prm["arity"] = 1;
    if (pt.fnl.has_mean) prm["mean"] = mean_tag(pt.fnl.mean);
    if (pt.fnl.has_norm) prm["norm"] = norm_label(pt.fnl.norm);
    prm["maps"] = maps_mode_name(maps);
    prm["dim"] = dim;
    prm["expected"] = dir_name(expected);
    pt.params = std::move(prm);

    std::ostringstream lb;
    lb << id_ << "[" << spec_.points.size() << "] p=" << fmt(pt.fnl.p)
       << " q=" << fmt(pt.fnl.q) << " f=" << pt.fnl.f.label;
    if (pt.fnl.has_mean) lb << " mean=" << mean_tag(pt.fnl.mean);
    if (pt.fnl.has_norm) lb << " norm=" << norm_label(pt.fnl.norm);
    lb << " maps=" << maps_mode_name(maps) << " dim=" << dim << " "
       << dir_name(expected);
    pt.label = lb.str();

    spec_.points.push_back(std::move(pt));
  }

  SuiteSpec take() { return std::move(spec_); }

 private:
  std::string id_;
  std::vector<int> dims_;
  SuiteSpec spec_;
};

MapsMode maps3(size_t k) {
  static const MapsMode m[3] = {MapsMode::random_kraus, MapsMode::congruence,
                                MapsMode::phi_identity};
  return m[k % 3];
}

std::vector<OperatorMean> mean_cycle5() {
  return {arithmetic_mean(), geometric_mean(), harmonic_mean(),
          power_mean(0.3), adjoint_mean(power_mean(0.5))};
}

std::vector<OperatorMean> mean_cycle3() {
  return {arithmetic_mean(), geometric_mean(), harmonic_mean()};
}

NormSpec anti_cycle(size_t k, int dim) {
  switch (k % 4) {
    case 0:
      return ky_fan_anti(1);
    case 1:
      return ky_fan_anti(dim);
    case 2:
      return derived_anti(trace_norm(), 1.0);
    default:
      return derived_anti(schatten_norm(2.0), 0.5);
  }
}

NormSpec norm_cycle(size_t k, int dim) {
  switch (k % 4) {
    case 0:
      return trace_norm();
    case 1:
      return operator_norm();
    case 2:
      return schatten_norm(2.0);
    default:
      return ky_fan_norm(std::min(2, dim));
  }
}

SuiteSpec build_thm21(const std::vector<int>& dims) {
  GridBuilder g("thm2.1", dims);
  const double pv[3] = {0.25, 0.5, 1.0};
  const double uv[3] = {0.25, 0.5, 1.0};
  for (int dim : dims)
    for (double p : pv)
      for (double q : pv)
        for (double u : uv)
          g.add(lieb_fnl(make_power(u / (p + q)), p, q),
                MapsMode::random_kraus, dim, Direction::concave);

  const std::pair<double, double> cpq[3] = {{0.5, 0.5}, {0.25, 0.5},
                                            {0.25, 1.0}};
  const MapsMode mm[3] = {MapsMode::congruence, MapsMode::identity,
                          MapsMode::random_kraus};
  size_t k = 0;
  for (const auto& [p, q] : cpq) {
    g.add(lieb_fnl(compose_pow(1.0 / (p + q),
                               make_pick_integral(pick_basic())),
                   p, q),
          mm[k % 3], dims.front(), Direction::concave);
    g.add(lieb_fnl(compose_pow(1.0 / (p + q), make_pick_integral(pick_rich())),
                   p, q),
          mm[(k + 1) % 3], dims.back(), Direction::concave);
    ++k;
  }

  const std::pair<double, double> npq[4] = {
      {-0.25, -0.25}, {-0.5, -0.5}, {-1.0, -1.0}, {-0.25, -1.0}};
  const double nu[2] = {0.5, 1.0};
  k = 0;
  for (const auto& [p, q] : npq)
    for (double u : nu) {
      g.add(lieb_fnl(make_power(u / (p + q)), p, q), MapsMode::random_kraus,
            g.dim_at(k), Direction::concave);
      ++k;
    }

  const std::pair<double, double> xpq[3] = {{0.5, 0.5}, {1.0, 1.0},
                                            {0.25, 0.75}};
  const double xu[2] = {0.4, 1.0};
  k = 0;
  for (const auto& [p, q] : xpq)
    for (double u : xu) {
      g.add(lieb_fnl(make_power(-u / (p + q)), p, q), MapsMode::random_kraus,
            g.dim_at(k), Direction::convex);
      g.add(lieb_fnl(make_power(u / (p + q)), -p, -q), MapsMode::random_kraus,
            g.dim_at(k + 1), Direction::convex);
      ++k;
    }
  return g.take();
}

SuiteSpec build_thm31(const std::vector<int>& dims) {
  GridBuilder g("thm3.1", dims);
  const auto means = mean_cycle5();
  const std::pair<double, double> pq[3] = {{0.5, 0.5}, {1.0, 1.0},
                                           {0.25, 0.75}};
  const double uv[2] = {0.5, 1.0};

  size_t k = 0;
  for (int dim : dims)
    for (const auto& [p, q] : pq)
      for (double u : uv) {
        const double gamma = std::max(p, q);
        g.add(mean_norm_fnl(make_power(u / gamma), p, q, means[k % 5],
                            anti_cycle(k, dim)),
              maps3(k), dim, Direction::concave);
        ++k;
      }
  for (int dim : dims)
    g.add(mean_norm_fnl(
              compose_pow(1.0 / 0.5, make_pick_integral(pick_basic())), 0.5,
              0.25, geometric_mean(), ky_fan_anti(dim)),
          MapsMode::random_kraus, dim, Direction::concave);

  k = 0;
  for (int dim : dims)
    for (const auto& [p, q] : pq)
      for (double u : uv) {
        const double gamma = std::max(p, q);
        g.add(mean_norm_fnl(make_power(-u / gamma), p, q, means[(k + 2) % 5],
                            norm_cycle(k, dim)),
              maps3(k + 1), dim, Direction::convex);
        ++k;
      }
  g.add(mean_norm_fnl(compose_pow(-2.0, make_pick_integral(pick_basic())), 0.5,
                      0.5, arithmetic_mean(), trace_norm()),
        MapsMode::random_kraus, dims.front(), Direction::convex);
  g.add(mean_norm_fnl(compose_pow(-1.0, make_pick_integral(pick_rich())), 1.0,
                      1.0, harmonic_mean(), schatten_norm(2.0)),
        MapsMode::congruence, dims.back(), Direction::convex);

  g.add(mean_norm_fnl(make_power(-1.0), -0.5, -0.5, geometric_mean(),
                      ky_fan_anti(1)),
        MapsMode::random_kraus, dims.front(), Direction::concave);
  g.add(mean_norm_fnl(make_power(-0.6), -1.0, -0.5, arithmetic_mean(),
                      derived_anti(trace_norm(), 1.0)),
        MapsMode::congruence, dims.front(), Direction::concave);
  g.add(mean_norm_fnl(make_power(0.7), -0.5, -1.0, harmonic_mean(),
                      trace_norm()),
        MapsMode::random_kraus, dims.front(), Direction::convex);
  g.add(mean_norm_fnl(make_power(1.0), -0.25, -0.5, arithmetic_mean(),
                      schatten_norm(2.0)),
        MapsMode::random_kraus, dims.back(), Direction::convex);
  return g.take();
}

SuiteSpec build_cor32(const std::vector<int>& dims) {
  GridBuilder g("cor3.2", dims);
  const double pv[2] = {0.5, 1.0};
  const PickParams hs[2] = {pick_basic(), pick_rich()};
  for (int dim : dims)
    for (double p : pv)
      for (const PickParams& hp : hs) {
        const ScalarFn h = make_pick_integral(hp);
        g.add(mean_norm1_fnl(compose_pow(1.0 / p, h), p, ky_fan_anti(dim)),
              MapsMode::random_kraus, dim, Direction::concave);
        g.add(mean_norm1_fnl(compose_pow(-1.0 / p, h), -p,
                             derived_anti(trace_norm(), 1.0)),
              MapsMode::congruence, dim, Direction::concave);
        g.add(mean_norm1_fnl(compose_pow(-1.0 / p, h), p, schatten_norm(2.0)),
              MapsMode::random_kraus, dim, Direction::convex);
        g.add(mean_norm1_fnl(compose_pow(1.0 / p, h), -p, trace_norm()),
              MapsMode::random_kraus, dim, Direction::convex);
      }
  return g.take();
}

SuiteSpec build_cor42(const std::vector<int>& dims) {
  GridBuilder g("cor4.2", dims);
  const auto means = mean_cycle3();
  const std::pair<double, double> pq[3] = {{0.5, 0.5}, {1.0, 1.0},
                                           {0.25, 0.75}};
  size_t k = 0;
  for (int dim : dims)
    for (const auto& [p, q] : pq) {
      const double gamma = std::max(p, q);
      const ScalarFn fns[4] = {
          make_power(0.5 / gamma), make_power(1.0 / gamma), make_log(),
          compose_pow(1.0 / gamma, make_pick_integral(pick_basic()))};
      for (const ScalarFn& f : fns) {
        g.add(mean_trace_fnl(f, p, q, means[k % 3]), maps3(k), dim,
              Direction::concave);
        ++k;
      }
    }
  for (int dim : dims) {
    g.add(mean_trace_fnl(make_example_a4(a4_capped()), 1.0, 1.0,
                         geometric_mean()),
          MapsMode::random_kraus, dim, Direction::concave);
    g.add(mean_trace_fnl(make_example_a4(a4_tp_concave()), 1.0, 1.0,
                         arithmetic_mean()),
          MapsMode::congruence, dim, Direction::concave);
  }
  g.add(mean_trace_fnl(make_power(-0.7), -0.5, -1.0, arithmetic_mean()),
        MapsMode::random_kraus, dims.front(), Direction::concave);
  g.add(mean_trace_fnl(compose_pow(-1.0, make_pick_integral(pick_basic())),
                       -0.5, -1.0, harmonic_mean()),
        MapsMode::random_kraus, dims.front(), Direction::concave);
  g.add(mean_trace_fnl(make_power(-1.0), -0.5, -0.5, geometric_mean()),
        MapsMode::random_kraus, dims.back(), Direction::concave);

  const std::pair<double, double> xpq[3] = {{1.0, 1.0}, {0.5, 1.0},
                                            {0.75, 0.75}};
  const double xv[2] = {1.0, 2.0};
  k = 0;
  for (int dim : dims)
    for (const auto& [p, q] : xpq)
      for (double u : xv) {
        const double gamma = std::max(p, q);
        g.add(mean_trace_fnl(make_power(-u / gamma), p, q, means[k % 3]),
              maps3(k + 1), dim, Direction::convex);
        ++k;
      }
  for (const auto& [p, q] :
       std::initializer_list<std::pair<double, double>>{{1.0, 1.0},
                                                        {0.5, 1.0}}) {
    g.add(mean_trace_fnl(
              compose_pow(-1.0, make_example_a4(a4_shifted_power())), p, q,
              arithmetic_mean()),
          MapsMode::random_kraus, dims.front(), Direction::convex);
    g.add(mean_trace_fnl(compose_pow(-1.0, make_example_a4(a4_tp_convex())), p,
                         q, geometric_mean()),
          MapsMode::random_kraus, dims.front(), Direction::convex);
  }
  g.add(mean_trace_fnl(make_power(1.5), -1.0, -1.0, arithmetic_mean()),
        MapsMode::random_kraus, dims.front(), Direction::convex);
  g.add(mean_trace_fnl(make_power(2.0), -0.5, -0.75, geometric_mean()),
        MapsMode::random_kraus, dims.back(), Direction::convex);
  return g.take();
}

SuiteSpec build_cor45(const std::vector<int>& dims) {
  GridBuilder g("cor4.5", dims);
  const double pv[2] = {0.5, 1.0};
  size_t k = 0;
  for (int dim : dims)
    for (double p : pv) {
      const ScalarFn hs[3] = {make_log(), make_power(0.3),
                              make_pick_integral(pick_basic())};
      for (const ScalarFn& h : hs) {
        const MapsMode m =
            (k % 2 == 0) ? MapsMode::random_kraus : MapsMode::congruence;
        g.add(mean_trace1_fnl(compose_pow(1.0 / p, h), p), m, dim,
              Direction::concave);
        g.add(mean_trace1_fnl(compose_pow(-1.0 / p, h), -p), m, dim,
              Direction::concave);
        ++k;
      }
    }
  const double pc[2] = {1.5, 2.0};
  for (int dim : dims)
    for (double p : pc) {
      g.add(mean_trace1_fnl(compose_pow(1.0 / p, make_power(2.0)), p),
            MapsMode::random_kraus, dim, Direction::convex);
      g.add(mean_trace1_fnl(compose_pow(1.0 / p, make_power(1.5)), p),
            MapsMode::random_kraus, dim, Direction::convex);
    }
  return g.take();
}

SuiteSpec build_thm52(const std::vector<int>& dims) {
  GridBuilder g("thm5.2", dims);
  const std::pair<double, double> pq[4] = {
      {0.5, 0.5}, {1.0, 1.0}, {0.25, 0.75}, {0.0, 0.5}};
  size_t k = 0;
  for (int dim : dims)
    for (const auto& [p, q] : pq) {
      const double m = std::min(p, q);
      const ScalarFn fns[4] = {make_power(1.0 / (1.0 + m)),
                               make_power(0.5 / (1.0 + m)), make_log(),
                               make_example_a4(a4_capped())};
      g.add(lieb_fnl(fns[k % 4], p, q), maps3(k), dim, Direction::concave);
      g.add(lieb_fnl(fns[(k + 1) % 4], p, q), maps3(k + 1), dim,
            Direction::concave);
      ++k;
    }
  g.add(lieb_fnl(make_power(-1.0 / 3.0), -0.5, -0.5), MapsMode::random_kraus,
        dims.front(), Direction::concave);
  g.add(lieb_fnl(make_power(-0.4), -1.0, -0.25), MapsMode::congruence,
        dims.front(), Direction::concave);
  g.add(lieb_fnl(compose_pow(-1.0, make_log()), -0.5, -1.0),
        MapsMode::random_kraus, dims.back(), Direction::concave);

  const std::pair<double, double> xpq[3] = {{0.5, 0.5}, {1.0, 1.0},
                                            {0.25, 0.75}};
  const double sv[2] = {-0.5, -2.0};
  k = 0;
  for (const auto& [p, q] : xpq)
    for (double s : sv) {
      g.add(lieb_fnl(make_power(s), p, q), MapsMode::random_kraus, g.dim_at(k),
            Direction::convex);
      ++k;
    }
  g.add(lieb_fnl(make_power(1.5), -0.5, -0.5), MapsMode::random_kraus,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(3.0), -1.0, -0.25), MapsMode::random_kraus,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(0.5), -0.75, -0.75), MapsMode::congruence,
        dims.back(), Direction::convex);
  return g.take();
}

SuiteSpec build_thm53(const std::vector<int>& dims) {
  GridBuilder g("thm5.3", dims);
  const double pv[2] = {-0.5, -0.25};
  const double qv[3] = {-0.5, 1.5, 2.0};
  size_t k = 0;
  for (double p : pv)
    for (double q : qv) {
      g.add(lieb_fnl(make_power(1.0 / (1.0 + p)), p, q), maps3(k), g.dim_at(k),
            Direction::convex);
      ++k;
    }
  g.add(lieb_fnl(make_power(2.0 / 0.5), -0.5, 1.5), MapsMode::random_kraus,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_example_a4(a4_shifted_power()), -0.5, 2.0),
        MapsMode::random_kraus, dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(2.0), -0.5, -1.0), MapsMode::congruence,
        dims.front(), Direction::convex);

  g.add(lieb_fnl(make_power(-2.0), 0.5, 0.5), MapsMode::random_kraus,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(-1.5), 0.25, 1.0), MapsMode::random_kraus,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(-2.5), 0.5, 0.25), MapsMode::congruence,
        dims.back(), Direction::convex);

  g.add(lieb_fnl(make_power(-2.0), 0.5, -1.5), MapsMode::psi_identity,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(-3.0), 0.5, -2.0), MapsMode::psi_identity,
        dims.back(), Direction::convex);
  g.add(lieb_fnl(make_power(-1.5), 0.25, -1.25), MapsMode::psi_identity,
        dims.front(), Direction::convex);
  return g.take();
}

SuiteSpec build_thm54(const std::vector<int>& dims) {
  GridBuilder g("thm5.4", dims);
  const double grid[5][3] = {{1.5, -0.5, 2.0},
                             {1.5, -1.0, 3.0},
                             {2.0, -0.5, 1.0},
                             {2.0, -1.0, 1.5},
                             {1.75, -0.25, 1.5}};
  size_t k = 0;
  for (const auto& row : grid) {
    g.add(lieb_fnl(make_power(row[2]), row[0], row[1]), maps3(k), g.dim_at(k),
          Direction::convex);
    ++k;
  }
  g.add(lieb_fnl(make_example_a4(a4_shifted_power()), 1.5, -0.5),
        MapsMode::random_kraus, dims.front(), Direction::convex);
  g.add(lieb_fnl(make_example_a4(a4_power_shift()), 1.5, -0.5),
        MapsMode::congruence, dims.front(), Direction::convex);

  g.add(lieb_fnl(make_power(-2.0), -1.5, 0.5), MapsMode::phi_identity,
        dims.front(), Direction::convex);
  g.add(lieb_fnl(make_power(-1.0), -2.0, 1.0), MapsMode::phi_identity,
        dims.back(), Direction::convex);
  g.add(lieb_fnl(make_power(-3.0), -1.5, 0.0), MapsMode::phi_identity,
        dims.front(), Direction::convex);
  return g.take();
}

SuiteSpec build_thm56(const std::vector<int>& dims) {
  GridBuilder g("thm5.6", dims);
  const double grid[8][2] = {{-0.5, 2.0 / 3.0}, {-0.5, 0.85},
                             {-0.25, 1.0 / 1.75}, {-0.25, 0.8},
                             {0.0, 0.5},          {0.0, 0.75},
                             {-0.5, 0.7},         {0.0, 0.6}};
  size_t k = 0;
  for (const auto& row : grid) {
    g.add(lieb_fnl(make_power(row[1]), row[0], 2.0), MapsMode::random_kraus,
          g.dim_at(k), Direction::convex);
    ++k;
  }
  return g.take();
}

SuiteSpec build_range(const std::string& id, const std::vector<int>& dims) {
  GridBuilder g(id, dims);
  size_t k = 0;
  auto add = [&](double p, double q, double s, MapsMode maps) {
    g.add(lieb_fnl(make_power(s), p, q), maps, g.dim_at(k),
          Direction::convex);
    ++k;
  };
  if (id == "range-i") {
    add(0.5, 0.5, -1.0, MapsMode::random_kraus);
    add(1.0, 1.0, -0.5, MapsMode::random_kraus);
    add(0.25, 0.75, -2.0, MapsMode::congruence);
    add(1.0, 0.0, -1.5, MapsMode::random_kraus);
    add(-0.5, -0.5, 1.0, MapsMode::random_kraus);
    add(-1.0, -1.0, 0.5, MapsMode::congruence);
    add(-0.25, -0.75, 2.0, MapsMode::random_kraus);
    add(0.0, -0.5, 1.5, MapsMode::random_kraus);
  } else if (id == "range-ii") {
    add(-0.5, 1.5, 2.0, MapsMode::random_kraus);
    add(-0.5, 1.5, 3.0, MapsMode::congruence);
    add(-0.25, 1.25, 1.5, MapsMode::random_kraus);
    add(-0.75, 1.75, 1.4, MapsMode::random_kraus);
    add(0.0, 2.0, 1.0, MapsMode::random_kraus);
    add(-1.0, 1.5, 2.0, MapsMode::random_kraus);
    add(-0.5, 2.0, 1.0, MapsMode::congruence);
    add(-0.5, 1.0, 2.0, MapsMode::random_kraus);
    add(1.5, -0.5, 2.0, MapsMode::random_kraus);
    add(1.25, -0.25, 1.5, MapsMode::random_kraus);
  } else if (id == "range-iii") {
    add(0.5, -1.5, -2.0, MapsMode::psi_identity);
    add(0.25, -1.25, -1.5, MapsMode::psi_identity);
    add(0.0, -2.0, -1.0, MapsMode::psi_identity);
    add(1.0, -1.5, -2.5, MapsMode::psi_identity);
    add(0.5, -2.0, -1.2, MapsMode::psi_identity);
    add(-1.5, 0.5, -2.0, MapsMode::phi_identity);
  } else if (id == "range-iv") {
    add(-0.5, 2.0, 0.7, MapsMode::random_kraus);
    add(-0.5, 2.0, 1.5, MapsMode::random_kraus);
    add(-0.25, 2.0, 0.6, MapsMode::random_kraus);
    add(0.0, 2.0, 0.5, MapsMode::random_kraus);
    add(0.0, 2.0, 2.0, MapsMode::congruence);
    add(-1.0, 2.0, 1.0, MapsMode::random_kraus);
    add(-0.75, 2.0, 0.8, MapsMode::random_kraus);
    add(2.0, -0.5, 0.7, MapsMode::random_kraus);
  } else {
    throw ConfigError("build_suite: unknown range suite '" + id + "'");
  }
  return g.take();
}

std::string normalize_id(std::string id) {
  const char sep = id.rfind("range", 0) == 0 ? '-' : '.';
  for (char& c : id)
    if (c == '_') c = sep;
  return id;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "thm2.1",  "thm3.1",  "cor3.2",   "cor4.2",    "cor4.5",
      "thm5.2",  "thm5.3",  "thm5.4",   "thm5.6",    "range-i",
      "range-ii", "range-iii", "range-iv"};
  return ids;
}

void assert_hypothesis(const std::string& theorem_id, const SuitePoint& pt) {
  const std::string id = normalize_id(theorem_id);
  check_common(id, pt);
  if (id == "thm2.1") return check_thm21(id, pt);
  if (id == "thm3.1") return check_thm31(id, pt, false);
  if (id == "cor3.2") return check_thm31(id, pt, true);
  if (id == "cor4.2") return check_cor42(id, pt);
  if (id == "cor4.5") return check_cor45(id, pt);
  if (id == "thm5.2") return check_thm52(id, pt);
  if (id == "thm5.3") return check_thm53(id, pt);
  if (id == "thm5.4") return check_thm54(id, pt);
  if (id == "thm5.6") return check_thm56(id, pt);
  if (id.rfind("range-", 0) == 0) return check_range(id, pt);
  throw ConfigError("assert_hypothesis: unknown suite '" + theorem_id + "'");
}

SuiteSpec build_suite(const std::string& theorem_id,
                      const std::vector<int>& dims) {
  const std::string id = normalize_id(theorem_id);
  if (dims.empty()) throw ConfigError("build_suite: dims must be nonempty");
  for (int d : dims)
    if (d < 1 || d > 16)
      throw ConfigError("build_suite: dims must lie in [1, 16]");

  SuiteSpec spec;
  if (id == "thm2.1")
    spec = build_thm21(dims);
  else if (id == "thm3.1")
    spec = build_thm31(dims);
  else if (id == "cor3.2")
    spec = build_cor32(dims);
  else if (id == "cor4.2")
    spec = build_cor42(dims);
  else if (id == "cor4.5")
    spec = build_cor45(dims);
  else if (id == "thm5.2")
    spec = build_thm52(dims);
  else if (id == "thm5.3")
    spec = build_thm53(dims);
  else if (id == "thm5.4")
    spec = build_thm54(dims);
  else if (id == "thm5.6")
    spec = build_thm56(dims);
  else if (id.rfind("range-", 0) == 0)
    spec = build_range(id, dims);
  else
    throw ConfigError("build_suite: unknown suite '" + theorem_id + "'");

  for (const SuitePoint& pt : spec.points) assert_hypothesis(id, pt);
  return spec;
}

SuiteResult run_suite(const SuiteSpec& suite, const SuiteRunConfig& config) {
  if (config.trials_per_point < 1)
    throw InvalidInput("run_suite: trials_per_point must be >= 1");
  if (!(config.rel_tol > 0.0))
    throw InvalidInput("run_suite: rel_tol must be positive");
  if (config.jobs < 1) throw InvalidInput("run_suite: jobs must be >= 1");
  if (!(config.cond_cap >= 1.0))
    throw InvalidInput("run_suite: cond_cap must be >= 1");
  if (suite.points.empty())
    throw ConfigError("run_suite: suite '" + suite.theorem_id +
                      "' has no points");
  for (const SuitePoint& pt : suite.points)
    assert_hypothesis(suite.theorem_id, pt);

  SuiteResult out;
  out.spec = suite;
  out.passed = true;
  for (size_t i = 0; i < suite.points.size(); ++i) {
    const SuitePoint& pt = suite.points[i];
    MidpointTrial t;
    t.fnl = pt.fnl;
    t.maps = pt.maps;
    t.dim = pt.dim;
    t.kraus_rank = pt.kraus_rank;
    t.cond_cap = config.cond_cap;
    t.direction = pt.expected;
    ConcavityReport rep =
        run_midpoint(t, config.trials_per_point, config.rel_tol,
                     derive_seed(config.seed, static_cast<std::uint64_t>(i)),
                     config.jobs);
    if (rep.violations > 0) out.passed = false;
    out.reports.push_back(std::move(rep));
  }
  return out;
}

json suite_report_json(const SuiteResult& result,
                       const SuiteRunConfig& config) {
  json out;
  out["suite"] = result.spec.theorem_id;
  out["seed"] = config.seed;
  out["trials_per_point"] = config.trials_per_point;
  out["rel_tol"] = config.rel_tol;
  out["cond_cap"] = config.cond_cap;
  out["jobs"] = config.jobs;
  out["points_total"] = result.spec.points.size();
  out["passed"] = result.passed;
  json pts = json::array();
  for (size_t i = 0; i < result.reports.size(); ++i) {
    const ConcavityReport& rep = result.reports[i];
    json e;
    e["label"] = result.spec.points[i].label;
    e["params"] = result.spec.points[i].params;
    e["trials_run"] = rep.trials_run;
    e["violations"] = rep.violations;
    e["worst_gap"] = rep.worst_gap;
    e["runtime_ms"] = rep.runtime_ms;
    if (rep.violations > 0) e["witness"] = rep.worst_witness;
    pts.push_back(std::move(e));
  }
  out["points"] = std::move(pts);
  return out;
}

}  // namespace lieblab
