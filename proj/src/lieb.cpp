#include "lieblab/lieb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieblab {

namespace {

// PSD square root tolerating (and clipping) eigenvalue dust down to
// -1e-10 * scale; anything below that is a genuine negativity and throws.
CMat psd_sqrt(const HermMatrix& h) {
  SpectralDecomp e = eig_herm(h);
  const double scale =
      std::max(1.0, std::abs(e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back()));
  std::vector<double> roots(e.eigenvalues.size());
  for (size_t i = 0; i < e.eigenvalues.size(); ++i) {
    const double v = e.eigenvalues[i];
    if (v < -1e-10 * scale)
      throw InvalidInput("psd_sqrt: matrix is not positive semidefinite");
    roots[i] = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return rebuild_from_eig(e, roots);
}

double clip_dust(double v, double scale) {
  return (v < 0.0 && v >= -1e-10 * scale) ? 0.0 : v;
}

double trace_fn_of_spectrum(const ScalarFn& f, const std::vector<double>& vals) {
  const double scale =
      std::max(1.0, vals.empty() ? 0.0 : std::abs(vals.back()));
  double acc = 0.0;
  for (double v : vals) acc += f.eval(clip_dust(v, scale));
  return acc;
}

}  // namespace

PosLinMap::PosLinMap(std::vector<CMat> kraus, bool require_strict)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty())
    throw InvalidInput("PosLinMap: needs at least one Kraus operator");
  out_dim_ = kraus_.front().rows();
  in_dim_ = kraus_.front().cols();
  if (out_dim_ < 1 || in_dim_ < 1)
    throw InvalidInput("PosLinMap: Kraus operators must be non-empty");
  for (const CMat& k : kraus_)
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      throw InvalidInput("PosLinMap: Kraus operators must share one shape");
  const SpectralDecomp e = eig_herm(HermMatrix(hermitize(image_of_identity())));
  strict_ = e.eigenvalues.front() > kPdFloor;
  if (require_strict && !strict_)
    throw InvalidInput(
        "PosLinMap: map is not strictly positive (Phi(I) is singular); "
        "construct with require_strict=false or use the compression factory");
}

CMat PosLinMap::apply(const CMat& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_)
    throw InvalidInput("PosLinMap::apply: input dimension mismatch");
  CMat out(out_dim_, out_dim_);
  for (const CMat& k : kraus_) out += k * x * k.adjoint();
  return out;
}

HermMatrix PosLinMap::apply(const HermMatrix& x) const {
  return HermMatrix(hermitize(apply(x.mat())));
}

PosDefMatrix PosLinMap::apply_pd(const PosDefMatrix& x) const {
  if (!strict_)
    throw InvalidInput(
        "PosLinMap::apply_pd: requires a strictly positive map");
  return PosDefMatrix(apply(x.base()));
}

CMat PosLinMap::image_of_identity() const {
  return apply(CMat::identity(in_dim_));
}

bool PosLinMap::is_unital(double tol) const {
  return max_abs_diff(image_of_identity(), CMat::identity(out_dim_)) <= tol;
}

PosLinMap PosLinMap::identity(int dim) {
  return PosLinMap({CMat::identity(dim)});
}

PosLinMap PosLinMap::congruence(const CMat& c) { return PosLinMap({c}); }

PosLinMap PosLinMap::compression(const CMat& k) {
  return PosLinMap({k}, false);
}

PosLinMap make_unital(const PosLinMap& m) {
  if (!m.strict())
    throw InvalidInput("make_unital: requires a strictly positive map");
  const PosDefMatrix s = PosDefMatrix(HermMatrix(hermitize(m.image_of_identity())));
  const CMat w = mat_power(s, -0.5).mat();
  std::vector<CMat> ks;
  ks.reserve(m.kraus().size());
  for (const CMat& k : m.kraus()) ks.push_back(w * k);
  return PosLinMap(std::move(ks));
}

PosLinMap random_kraus_map(int in_dim, int out_dim, int rank,
                           RandomSource& rng) {
  if (in_dim < 1 || out_dim < 1 || rank < 1)
    throw InvalidInput("random_kraus_map: dimensions and rank must be >= 1");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<CMat> ks;
    ks.reserve(static_cast<size_t>(rank));
    double mass = 0.0;
    for (int r = 0; r < rank; ++r) {
      ks.push_back(random_gaussian(out_dim, in_dim, rng));
      const double fn = ks.back().fro_norm();
      mass += fn * fn;
    }
    const double scale = std::sqrt(static_cast<double>(out_dim) / mass);
    for (CMat& k : ks) k = scale * k;
    CMat s(out_dim, out_dim);
    for (const CMat& k : ks) s += k * k.adjoint();
    const SpectralDecomp e = eig_herm(HermMatrix(hermitize(s)));
    if (e.eigenvalues.front() > 1e-6) return PosLinMap(std::move(ks));
  }
  throw ConfigError("random_kraus_map: failed to draw a well conditioned map");
}

PosLinMap random_congruence_map(int dim, RandomSource& rng) {
  const PosDefMatrix w = random_posdef(dim, rng, 100.0);
  const CMat u = random_unitary(dim, rng);
  return PosLinMap::congruence(mat_power(w, 0.5).mat() * u);
}

namespace {

void check_exponents_and_dims(const char* where, const PosLinMap& phi,
                              const PosLinMap& psi, double p, double q,
                              const PosDefMatrix& a, const PosDefMatrix& b) {
  if (p == 0.0 && q == 0.0) {
    std::string msg(where);
    throw InvalidInput(msg + ": (p, q) = (0, 0) is excluded");
  }
  if (phi.out_dim() != psi.out_dim()) {
    std::string msg(where);
    throw InvalidInput(msg + ": maps must share one output dimension");
  }
  if (phi.in_dim() != a.dim() || psi.in_dim() != b.dim()) {
    std::string msg(where);
    throw InvalidInput(msg + ": matrix dimension does not match its map");
  }
}

}  // namespace

double lieb_trace(const ScalarFn& f, const PosLinMap& phi,
                  const PosLinMap& psi, double p, double q,
                  const PosDefMatrix& a, const PosDefMatrix& b) {
  check_exponents_and_dims("lieb_trace", phi, psi, p, q, a, b);
  const HermMatrix phn = phi.apply(mat_power(a, p).base());
  const HermMatrix psn = psi.apply(mat_power(b, q).base());
  const CMat s = psd_sqrt(phn);
  const SpectralDecomp e =
      eig_herm(HermMatrix(hermitize(s * psn.mat() * s)));
  return trace_fn_of_spectrum(f, e.eigenvalues);
}

double log_limit_trace(const ScalarFn& f, const PosLinMap& phi,
                       const PosLinMap& psi, double alpha,
                       const PosDefMatrix& a, const PosDefMatrix& b) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvalidInput("log_limit_trace: alpha must lie in [0, 1]");
  if (!phi.is_unital() || !psi.is_unital())
    throw InvalidInput("log_limit_trace: maps must be unital");
  if (phi.out_dim() != psi.out_dim())
    throw InvalidInput("log_limit_trace: maps must share one output dimension");
  if (phi.in_dim() != a.dim() || psi.in_dim() != b.dim())
    throw InvalidInput("log_limit_trace: matrix dimension does not match its map");
  auto log_of = [](const PosDefMatrix& m) {
    std::vector<double> lv = m.eig().eigenvalues;
    for (double& v : lv) v = std::log(v);
    return HermMatrix(rebuild_from_eig(m.eig(), lv));
  };
  const CMat h = alpha * phi.apply(log_of(a)).mat() +
                 (1.0 - alpha) * psi.apply(log_of(b)).mat();
  const SpectralDecomp e = eig_herm(HermMatrix(hermitize(h)));
  double acc = 0.0;
  for (double mu : e.eigenvalues) acc += f.eval(std::exp(mu));
  return acc;
}

double eval_functional(const FunctionalSpec& fnl, const PosLinMap& phi,
                       const PosLinMap& psi, const PosDefMatrix& a,
                       const PosDefMatrix& b) {
  if (fnl.arity != 1 && fnl.arity != 2)
    throw InvalidInput("eval_functional: arity must be 1 or 2");
  if (!fnl.f.eval) throw InvalidInput("eval_functional: missing function");
  const PosLinMap& psi_eff = fnl.arity == 1 ? phi : psi;
  const PosDefMatrix& b_eff = fnl.arity == 1 ? a : b;
  if (fnl.form == "lieb_trace")
    return lieb_trace(fnl.f, phi, psi_eff, fnl.p, fnl.q, a, b_eff);
  if (fnl.form == "mean_trace" || fnl.form == "mean_norm") {
    if (!fnl.has_mean)
      throw InvalidInput("eval_functional: form '" + fnl.form +
                         "' needs an operator mean");
    check_exponents_and_dims("eval_functional", phi, psi_eff, fnl.p, fnl.q, a,
                             b_eff);
    const PosDefMatrix x =
        mean_apply(fnl.mean, phi.apply_pd(mat_power(a, fnl.p)),
                   psi_eff.apply_pd(mat_power(b_eff, fnl.q)));
    if (fnl.form == "mean_trace")
      return trace_fn_of_spectrum(fnl.f, x.eig().eigenvalues);
    if (!fnl.has_norm)
      throw InvalidInput("eval_functional: form 'mean_norm' needs a norm");
    return eval_norm(fnl.norm, apply_fn(x, fnl.f));
  }
  throw InvalidInput("eval_functional: unknown form '" + fnl.form + "'");
}

LineSegment::LineSegment(PosDefMatrix a0, HermMatrix h, double x_max)
    : a0_(std::move(a0)), h_(std::move(h)), x_max_(x_max) {
  if (a0_.dim() != h_.dim())
    throw InvalidInput("LineSegment: dimension mismatch");
  if (!(x_max_ > 0.0)) throw InvalidInput("LineSegment: x_max must be positive");
  const SpectralDecomp e = eig_herm(h_);
  const double hop = std::max(std::abs(e.eigenvalues.front()),
                              std::abs(e.eigenvalues.back()));
  if (!(a0_.min_eig() > x_max_ * hop)) {
    std::ostringstream os;
    os << "LineSegment: positivity margin fails: lambda_min(A0)="
       << a0_.min_eig() << " must exceed x_max * ||H|| = " << x_max_ * hop;
    throw InvalidInput(os.str());
  }
}

PosDefMatrix LineSegment::at(double x) const {
  if (!(x >= 0.0 && x <= x_max_))
    throw InvalidInput("LineSegment: x outside [0, x_max]");
  return PosDefMatrix(HermMatrix(a0_.mat() + x * h_.mat()));
}

EpsteinProbe epstein_probe(double p, double q, const PosLinMap& phi,
                           const PosLinMap& psi, const LineSegment& sa,
                           const LineSegment& sb, double x, double h) {
  if (!(p >= 0.0 && q >= 0.0) || !(p + q > 0.0) || p + q > 1.0 + 1e-12)
    throw InvalidInput(
        "epstein_probe: requires p, q >= 0 with 0 < p + q <= 1");
  if (!(h > 0.0)) throw InvalidInput("epstein_probe: step must be positive");
  const double reach = std::min(sa.x_max(), sb.x_max());
  if (x - 2.0 * h < 0.0 || x + 2.0 * h > reach)
    throw InvalidInput("epstein_probe: stencil leaves the segment domain");
  ScalarFn probe;
  const double e = 1.0 / (p + q);
  probe.eval = [e](double y) { return 1.0 / (1.0 + std::pow(y, -e)); };
  probe.label = "epstein_probe_fn";
  auto g = [&](double t) {
    return lieb_trace(probe, phi, psi, p, q, sa.at(t), sb.at(t));
  };
  const double g0 = g(x);
  const double d1 = (g(x + h) - 2.0 * g0 + g(x - h)) / (h * h);
  const double d2 =
      (g(x + 2.0 * h) - 2.0 * g0 + g(x - 2.0 * h)) / (4.0 * h * h);
  return {g0, (4.0 * d1 - d2) / 3.0};
}

namespace {

VariationalReport variational_impl(const ScalarFn& f, const ScalarFn& fconj,
                                   const PosLinMap& phi, const PosLinMap& psi,
                                   double p, double q, const PosDefMatrix& a,
                                   const PosDefMatrix& b, int candidates,
                                   RandomSource& rng, bool lower) {
  check_exponents_and_dims("variational", phi, psi, p, q, a, b);
  const PosDefMatrix phn = phi.apply_pd(mat_power(a, p));
  const HermMatrix psn = psi.apply(mat_power(b, q).base());
  const PosDefMatrix s = mat_power(phn, 0.5);
  const PosDefMatrix phinv = pd_inverse(phn);
  const SpectralDecomp me =
      eig_herm(HermMatrix(hermitize(s.mat() * psn.mat() * s.mat())));

  double target = 0.0;
  for (double v : me.eigenvalues) target += f.eval(v);

  std::vector<double> deriv(me.eigenvalues.size());
  for (size_t i = 0; i < me.eigenvalues.size(); ++i) {
    const double v = me.eigenvalues[i];
    const double d = 1e-6 * std::max(1.0, std::abs(v));
    deriv[i] = (f.eval(v + d) - f.eval(v - d)) / (2.0 * d);
  }
  const CMat ystar = rebuild_from_eig(me, deriv);
  const PosDefMatrix xstar = mat_power(
      PosDefMatrix(HermMatrix(hermitize(s.mat() * ystar * s.mat()))), 0.5);

  auto value_of = [&](const CMat& xm) {
    const double t1 = (xm * psn.mat() * xm).trace().real();
    const SpectralDecomp we =
        eig_herm(HermMatrix(hermitize(xm * phinv.mat() * xm)));
    double t2 = 0.0;
    for (double v : we.eigenvalues) t2 += fconj.eval(v);
    return t1 - t2;
  };

  VariationalReport rep{};
  rep.target = target;
  rep.at_optimizer = value_of(xstar.mat());
  rep.best = rep.at_optimizer;
  const int dim = phn.dim();
  for (int i = 0; i < candidates; ++i) {
    const double v = value_of(random_posdef(dim, rng, 100.0).mat());
    rep.best = lower ? std::min(rep.best, v) : std::max(rep.best, v);
  }
  return rep;
}

}  // namespace

VariationalReport variational_inf(const ScalarFn& f, const ScalarFn& fcheck,
                                  const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b, int candidates,
                                  RandomSource& rng) {
  if (!f.flags.non_decreasing || !f.flags.concave)
    throw InvalidInput(
        "variational_inf: f must be declared non-decreasing and concave");
  return variational_impl(f, fcheck, phi, psi, p, q, a, b, candidates, rng,
                          true);
}

VariationalReport variational_sup(const ScalarFn& f, const ScalarFn& fhat,
                                  const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b, int candidates,
                                  RandomSource& rng) {
  if (!f.flags.non_decreasing || !f.flags.convex)
    throw InvalidInput(
        "variational_sup: f must be declared non-decreasing and convex");
  return variational_impl(f, fhat, phi, psi, p, q, a, b, candidates, rng,
                          false);
}

}  // namespace lieblab
