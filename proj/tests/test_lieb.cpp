#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lieblab/lieb.hpp"

using namespace lieblab;

namespace {

PosDefMatrix scaled_identity(int dim, double v) {
  SpectralDecomp e;
  e.eigenvalues.assign(static_cast<size_t>(dim), v);
  e.unitary = CMat::identity(dim);
  return PosDefMatrix::from_eig(std::move(e));
}

PosDefMatrix pd_scalar(double v) { return scaled_identity(1, v); }

double min_eig_of(const CMat& herm) {
  return eig_herm(HermMatrix(hermitize(herm))).eigenvalues.front();
}

ScalarFn closed_form(std::function<double(double)> f, const char* label) {
  ScalarFn s;
  s.eval = std::move(f);
  s.label = label;
  return s;
}

}  // namespace

TEST_CASE("kraus maps apply as sums of conjugations") {
  CMat k1(2, 2), k2(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = 2.0;
  k2(0, 1) = 1.0;
  k2(1, 0) = cxd(0.0, 1.0);
  const PosLinMap phi({k1, k2});
  CHECK(phi.in_dim() == 2);
  CHECK(phi.out_dim() == 2);
  CHECK(phi.strict());
  RandomSource rng(3);
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const CMat want = k1 * a.mat() * k1.adjoint() + k2 * a.mat() * k2.adjoint();
  CHECK(max_abs_diff(phi.apply(a.mat()), want) < 1e-12);
  CHECK(max_abs_diff(phi.apply_pd(a).mat(), hermitize(want)) < 1e-12);
}

TEST_CASE("map factories") {
  RandomSource rng(13);
  const PosDefMatrix a = random_posdef(3, rng, 10.0);

  const PosLinMap id = PosLinMap::identity(3);
  CHECK(max_abs_diff(id.apply(a.mat()), a.mat()) == 0.0);
  CHECK(id.is_unital());

  CMat c(3, 3);
  c(0, 0) = 1.0;
  c(0, 2) = 0.5;
  c(1, 1) = 2.0;
  c(2, 2) = 1.0;
  const PosLinMap cong = PosLinMap::congruence(c);
  CHECK(max_abs_diff(cong.apply(a.mat()), c * a.mat() * c.adjoint()) < 1e-12);

  CMat v(1, 3);
  v(0, 0) = 1.0;
  v(0, 1) = 1.0;
  v(0, 2) = 1.0;
  const PosLinMap comp = PosLinMap::compression(v);
  CHECK(comp.strict());  // image of the identity is ||v||^2 > 0
  CHECK(comp.out_dim() == 1);
  CHECK(comp.apply(a.mat())(0, 0).real() ==
        doctest::Approx((v * a.mat() * v.adjoint())(0, 0).real()));

  CMat defective(2, 2);
  defective(0, 0) = 1.0;  // second output row is dead, Phi(I) is singular
  const PosLinMap flat = PosLinMap::compression(defective);
  CHECK_FALSE(flat.strict());
  const PosDefMatrix a2 =
      PosDefMatrix(HermMatrix(CMat::identity(2)));
  CHECK_THROWS_AS(flat.apply_pd(a2), InvalidInput);
  CHECK_THROWS_AS(PosLinMap({defective}), InvalidInput);  // strict by default

  CHECK_THROWS_AS(PosLinMap(std::vector<CMat>{}), InvalidInput);
  CMat other(2, 2);
  other(0, 0) = 1.0;
  other(1, 1) = 1.0;
  CHECK_THROWS_AS(PosLinMap({c, other}), InvalidInput);
}

TEST_CASE("random maps are normalized and strict") {
  RandomSource rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    const PosLinMap m = random_kraus_map(2, 3, 2, rng);
    CHECK(m.strict());
    CHECK(m.in_dim() == 2);
    CHECK(m.out_dim() == 3);
    CHECK(m.image_of_identity().trace().real() == doctest::Approx(3.0));
    CHECK(min_eig_of(m.image_of_identity()) > 1e-6);
  }
  const PosLinMap cg = random_congruence_map(3, rng);
  CHECK(cg.strict());
  CHECK(cg.kraus().size() == 1);

  const PosLinMap u = make_unital(random_kraus_map(2, 2, 2, rng));
  CHECK(u.is_unital());
}

TEST_CASE("trace functional on commuting input") {
  // A = 2 I, B = 3 I in dimension 2: Tr (A^{1/2} B A^{1/2})^{1/2} = 2 sqrt 6
  const PosDefMatrix a = scaled_identity(2, 2.0);
  const PosDefMatrix b = scaled_identity(2, 3.0);
  const PosLinMap id = PosLinMap::identity(2);
  const double v = lieb_trace(make_power(0.5), id, id, 1.0, 1.0, a, b);
  CHECK(v == doctest::Approx(2.0 * std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("inverting slots and sign of s leaves the trace invariant") {
  RandomSource rng(33);
  const PosDefMatrix a = random_posdef(3, rng, 20.0);
  const PosDefMatrix b = random_posdef(3, rng, 20.0);
  const PosLinMap id = PosLinMap::identity(3);
  for (double s : {0.6, 1.3}) {
    const double lhs = lieb_trace(make_power(s), id, id, 0.7, 0.5, a, b);
    const double rhs = lieb_trace(make_power(-s), id, id, -0.7, -0.5, a, b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("trace functional input validation") {
  RandomSource rng(43);
  const PosDefMatrix a2 = random_posdef(2, rng, 10.0);
  const PosDefMatrix a3 = random_posdef(3, rng, 10.0);
  const PosLinMap id2 = PosLinMap::identity(2);
  const PosLinMap id3 = PosLinMap::identity(3);
  CHECK_THROWS_AS(
      lieb_trace(make_power(1.0), id2, id2, 0.0, 0.0, a2, a2), InvalidInput);
  CHECK_THROWS_AS(
      lieb_trace(make_power(1.0), id2, id3, 1.0, 1.0, a2, a3), InvalidInput);
  CHECK_THROWS_AS(
      lieb_trace(make_power(1.0), id2, id2, 1.0, 1.0, a3, a2), InvalidInput);
}

TEST_CASE("log limit matches the small-exponent approximation") {
  RandomSource rng(53);
  const PosLinMap phi = make_unital(random_kraus_map(2, 2, 2, rng));
  const PosLinMap psi = make_unital(random_kraus_map(2, 2, 2, rng));
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const PosDefMatrix b = random_posdef(2, rng, 10.0);
  const double alpha = 0.6;
  const ScalarFn f = make_power(0.5);

  const double exact = log_limit_trace(f, phi, psi, alpha, a, b);

  const double r = 1e-3;
  const CMat mix = alpha * phi.apply(mat_power(a, r).mat()) +
                   (1.0 - alpha) * psi.apply(mat_power(b, r).mat());
  const PosDefMatrix mixed(HermMatrix(hermitize(mix)));
  const PosDefMatrix lim = mat_power(mixed, 1.0 / r);
  double approx = 0.0;
  for (double lam : lim.eig().eigenvalues) approx += f(lam);

  CHECK(std::abs(exact - approx) / (1.0 + std::abs(exact)) < 1e-2);

  CHECK_THROWS_AS(log_limit_trace(f, phi, psi, 1.5, a, b), InvalidInput);
  const PosLinMap skew = random_kraus_map(2, 2, 2, rng);
  if (!skew.is_unital())
    CHECK_THROWS_AS(log_limit_trace(f, skew, psi, 0.5, a, b), InvalidInput);
}

TEST_CASE("functional forms agree with their direct evaluations") {
  RandomSource rng(63);
  const PosLinMap phi = random_kraus_map(2, 2, 2, rng);
  const PosLinMap psi = random_kraus_map(2, 2, 2, rng);
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const PosDefMatrix b = random_posdef(2, rng, 10.0);

  FunctionalSpec lt;
  lt.form = "lieb_trace";
  lt.f = make_power(0.5);
  lt.p = 0.7;
  lt.q = 0.3;
  CHECK(eval_functional(lt, phi, psi, a, b) ==
        doctest::Approx(
            lieb_trace(lt.f, phi, psi, 0.7, 0.3, a, b)).epsilon(1e-12));

  FunctionalSpec mt = lt;
  mt.form = "mean_trace";
  mt.has_mean = true;
  mt.mean = geometric_mean();
  const PosDefMatrix x = mean_apply(
      geometric_mean(), phi.apply_pd(mat_power(a, 0.7)),
      psi.apply_pd(mat_power(b, 0.3)));
  double want = 0.0;
  for (double lam : x.eig().eigenvalues) want += mt.f(lam);
  CHECK(eval_functional(mt, phi, psi, a, b) ==
        doctest::Approx(want).epsilon(1e-12));

  FunctionalSpec mn = mt;
  mn.form = "mean_norm";
  mn.has_norm = true;
  mn.norm = ky_fan_anti(1);
  CHECK(eval_functional(mn, phi, psi, a, b) ==
        doctest::Approx(eval_norm(mn.norm, apply_fn(x, mn.f))).epsilon(1e-12));

  FunctionalSpec one = mt;
  one.arity = 1;
  one.q = one.p;
  FunctionalSpec both = one;
  both.arity = 2;
  CHECK(eval_functional(one, phi, psi, a, b) ==
        doctest::Approx(eval_functional(both, phi, phi, a, a))
            .epsilon(1e-12));

  FunctionalSpec bad = lt;
  bad.form = "other";
  CHECK_THROWS_AS(eval_functional(bad, phi, psi, a, b), InvalidInput);
  bad = mt;
  bad.has_mean = false;
  CHECK_THROWS_AS(eval_functional(bad, phi, psi, a, b), InvalidInput);
}

TEST_CASE("line segments stay positive definite") {
  RandomSource rng(73);
  const PosDefMatrix a0 = random_posdef(2, rng, 4.0);
  const HermMatrix h = random_herm(2, rng);
  const double hnorm =
      std::max(std::abs(min_eig_of(h.mat())),
               std::abs(eig_herm(h).eigenvalues.back()));
  const double xmax = 0.5 * a0.min_eig() / hnorm;
  const LineSegment seg(a0, h, xmax);
  CHECK(max_abs_diff(seg.at(0.0).mat(), a0.mat()) < 1e-12);
  const PosDefMatrix mid = seg.at(xmax / 2.0);
  CHECK(max_abs_diff(mid.mat(), a0.mat() + (xmax / 2.0) * h.mat()) < 1e-12);
  CHECK_THROWS_AS(seg.at(-0.01), InvalidInput);
  CHECK_THROWS_AS(seg.at(xmax * 1.01), InvalidInput);
  CHECK_THROWS_AS(LineSegment(a0, h, 10.0 * a0.min_eig() / hnorm),
                  InvalidInput);
}

TEST_CASE("second derivative probe matches a closed form") {
  // scalar segments a(x) = b(x) = 0.9 + x probed at 0.1, where the probe
  // function is (1 + d)/(2 + d) in d = x - 0.1 and its second derivative
  // at d = 0 is -1/4
  const LineSegment sa(pd_scalar(0.9), HermMatrix(CMat::identity(1)), 0.2);
  const LineSegment sb(pd_scalar(0.9), HermMatrix(CMat::identity(1)), 0.2);
  const PosLinMap id1 = PosLinMap::identity(1);
  const EpsteinProbe probe =
      epstein_probe(0.5, 0.5, id1, id1, sa, sb, 0.1);
  CHECK(probe.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(probe.second_derivative == doctest::Approx(-0.25).epsilon(1e-6));
}

TEST_CASE("probe reports concavity along random segments") {
  RandomSource rng(83);
  for (int rep = 0; rep < 20; ++rep) {
    const PosLinMap phi = random_kraus_map(2, 2, 2, rng);
    const PosLinMap psi = random_kraus_map(2, 2, 2, rng);
    const PosDefMatrix a0 = random_posdef(2, rng, 4.0);
    const PosDefMatrix b0 = random_posdef(2, rng, 4.0);
    const HermMatrix ha = random_herm(2, rng);
    const HermMatrix hb = random_herm(2, rng);
    auto seg = [](const PosDefMatrix& m, const HermMatrix& h) {
      const SpectralDecomp e = eig_herm(h);
      const double hn = std::max(std::abs(e.eigenvalues.front()),
                                 std::abs(e.eigenvalues.back()));
      return LineSegment(m, h, 0.3 * m.min_eig() / hn);
    };
    const LineSegment sa = seg(a0, ha);
    const LineSegment sb = seg(b0, hb);
    const double x =
        0.5 * std::min(sa.x_max(), sb.x_max());
    const EpsteinProbe probe = epstein_probe(0.4, 0.5, phi, psi, sa, sb, x);
    CHECK(probe.second_derivative <
          1e-6 * (1.0 + std::abs(probe.value)));
  }
}

TEST_CASE("variational bracket for a concave function") {
  RandomSource rng(93);
  const ScalarFn f = make_power(0.5);
  const ScalarFn fcheck =
      closed_form([](double t) { return -0.25 / t; }, "check(x^0.5)");
  for (int rep = 0; rep < 5; ++rep) {
    const PosLinMap phi = random_kraus_map(2, 2, 2, rng);
    const PosLinMap psi = random_kraus_map(2, 2, 2, rng);
    const PosDefMatrix a = random_posdef(2, rng, 10.0);
    const PosDefMatrix b = random_posdef(2, rng, 10.0);
    const VariationalReport rep5 =
        variational_inf(f, fcheck, phi, psi, 0.6, 0.7, a, b, 20, rng);
    CHECK(rep5.best >= rep5.target - 1e-6 * (1.0 + std::abs(rep5.target)));
    CHECK(rep5.at_optimizer ==
          doctest::Approx(rep5.target).epsilon(1e-6));
  }
}

TEST_CASE("variational bracket for a convex function") {
  RandomSource rng(103);
  const ScalarFn f = make_power(2.0);
  const ScalarFn fhat =
      closed_form([](double t) { return 0.25 * t * t; }, "hat(x^2)");
  for (int rep = 0; rep < 5; ++rep) {
    const PosLinMap phi = random_kraus_map(2, 2, 2, rng);
    const PosLinMap psi = random_kraus_map(2, 2, 2, rng);
    const PosDefMatrix a = random_posdef(2, rng, 10.0);
    const PosDefMatrix b = random_posdef(2, rng, 10.0);
    const VariationalReport rep6 =
        variational_sup(f, fhat, phi, psi, 0.8, 0.5, a, b, 20, rng);
    CHECK(rep6.best <= rep6.target + 1e-6 * (1.0 + std::abs(rep6.target)));
    CHECK(rep6.at_optimizer ==
          doctest::Approx(rep6.target).epsilon(1e-6));
  }
}

TEST_CASE("negative-exponent images are operator convex or concave") {
  RandomSource rng(113);
  const double q = -0.5;
  for (int rep = 0; rep < 10; ++rep) {
    const PosLinMap psi = random_kraus_map(2, 2, 2, rng);
    const PosDefMatrix b1 = random_posdef(2, rng, 10.0);
    const PosDefMatrix b2 = random_posdef(2, rng, 10.0);
    const PosDefMatrix bm = pd_midpoint(b1, b2);

    // B -> Psi(B^q)^{-1} is operator concave on the negative box
    const CMat concave_gap =
        pd_inverse(psi.apply_pd(mat_power(bm, q))).mat() -
        0.5 * (pd_inverse(psi.apply_pd(mat_power(b1, q))).mat() +
               pd_inverse(psi.apply_pd(mat_power(b2, q))).mat());
    CHECK(min_eig_of(concave_gap) > -1e-9);

    // B -> Psi(B^{-q})^{-1} is operator convex there
    const CMat convex_gap =
        0.5 * (pd_inverse(psi.apply_pd(mat_power(b1, -q))).mat() +
               pd_inverse(psi.apply_pd(mat_power(b2, -q))).mat()) -
        pd_inverse(psi.apply_pd(mat_power(bm, -q))).mat();
    CHECK(min_eig_of(convex_gap) > -1e-9);

    // (X, B) -> X^* Psi(B^q) X is jointly operator convex
    const CMat x1 = random_gaussian(2, 2, rng);
    const CMat x2 = random_gaussian(2, 2, rng);
    const CMat xm = 0.5 * (x1 + x2);
    const CMat joint_gap =
        0.5 * (x1.adjoint() * psi.apply_pd(mat_power(b1, q)).mat() * x1 +
               x2.adjoint() * psi.apply_pd(mat_power(b2, q)).mat() * x2) -
        xm.adjoint() * psi.apply_pd(mat_power(bm, q)).mat() * xm;
    CHECK(min_eig_of(joint_gap) > -1e-9);
  }
}
