#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lieblab/operator_mean.hpp"

using namespace lieblab;

namespace {

PosDefMatrix scaled_identity(int dim, double v) {
  SpectralDecomp e;
  e.eigenvalues.assign(static_cast<size_t>(dim), v);
  e.unitary = CMat::identity(dim);
  return PosDefMatrix::from_eig(std::move(e));
}

double min_eig_of_diff(const PosDefMatrix& hi, const PosDefMatrix& lo) {
  const SpectralDecomp e = eig_herm(HermMatrix(hi.mat() - lo.mat()));
  return e.eigenvalues.front();
}

}  // namespace

TEST_CASE("geometric mean of commuting matrices") {
  const PosDefMatrix a = scaled_identity(2, 4.0);
  const PosDefMatrix b = scaled_identity(2, 9.0);
  const PosDefMatrix g = mean_apply(geometric_mean(), a, b);
  CHECK(max_abs_diff(g.mat(), 6.0 * CMat::identity(2)) < 1e-12);
}

TEST_CASE("arithmetic and harmonic means match their formulas") {
  RandomSource rng(7);
  const PosDefMatrix a = random_posdef(3, rng, 20.0);
  const PosDefMatrix b = random_posdef(3, rng, 20.0);
  const PosDefMatrix am = mean_apply(arithmetic_mean(), a, b);
  CHECK(max_abs_diff(am.mat(), 0.5 * (a.mat() + b.mat())) < 1e-10);

  const PosDefMatrix hm = mean_apply(harmonic_mean(), a, b);
  const CMat want =
      2.0 * pd_inverse(PosDefMatrix(HermMatrix(hermitize(
                pd_inverse(a).mat() + pd_inverse(b).mat()))))
                .mat();
  CHECK(max_abs_diff(hm.mat(), want) < 1e-9);

  const PosDefMatrix s1 = scaled_identity(1, 1.0);
  const PosDefMatrix s3 = scaled_identity(1, 3.0);
  CHECK(mean_apply(harmonic_mean(), s1, s3).mat()(0, 0).real() ==
        doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("geometric mean solves its defining equation") {
  RandomSource rng(17);
  const PosDefMatrix a = random_posdef(3, rng, 30.0);
  const PosDefMatrix b = random_posdef(3, rng, 30.0);
  const PosDefMatrix g = mean_apply(geometric_mean(), a, b);
  const CMat probe = g.mat() * pd_inverse(a).mat() * g.mat();
  CHECK(max_abs_diff(probe, b.mat()) < 1e-8);
}

TEST_CASE("power family endpoints") {
  RandomSource rng(27);
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const PosDefMatrix b = random_posdef(2, rng, 10.0);
  const PosDefMatrix p1 = mean_apply(power_mean(1.0), a, b);
  CHECK(max_abs_diff(p1.mat(), mean_apply(arithmetic_mean(), a, b).mat()) <
        1e-9);
  const PosDefMatrix pm1 = mean_apply(power_mean(-1.0), a, b);
  CHECK(max_abs_diff(pm1.mat(), mean_apply(harmonic_mean(), a, b).mat()) <
        1e-9);
  const PosDefMatrix p0 = mean_apply(power_mean(0.0), a, b);
  CHECK(max_abs_diff(p0.mat(), mean_apply(geometric_mean(), a, b).mat()) <
        1e-9);
  CHECK_THROWS_AS(power_mean(1.5), InvalidInput);
  CHECK_THROWS_AS(power_mean(-2.0), InvalidInput);
}

TEST_CASE("means are idempotent and ordered") {
  RandomSource rng(37);
  const PosDefMatrix a = random_posdef(3, rng, 20.0);
  const PosDefMatrix b = random_posdef(3, rng, 20.0);
  for (const OperatorMean& m :
       {arithmetic_mean(), geometric_mean(), harmonic_mean(),
        power_mean(0.4)}) {
    const PosDefMatrix maa = mean_apply(m, a, a);
    CHECK(max_abs_diff(maa.mat(), a.mat()) < 1e-9);
  }
  const PosDefMatrix am = mean_apply(arithmetic_mean(), a, b);
  const PosDefMatrix gm = mean_apply(geometric_mean(), a, b);
  const PosDefMatrix hm = mean_apply(harmonic_mean(), a, b);
  CHECK(min_eig_of_diff(am, gm) > -1e-9);
  CHECK(min_eig_of_diff(gm, hm) > -1e-9);
}

TEST_CASE("means are monotone in each argument") {
  RandomSource rng(47);
  const PosDefMatrix a = random_posdef(3, rng, 10.0);
  const PosDefMatrix b = random_posdef(3, rng, 10.0);
  SpectralDecomp bumped = a.eig();
  for (double& v : bumped.eigenvalues) v += 0.5;
  const PosDefMatrix a2 = PosDefMatrix::from_eig(std::move(bumped));
  for (const OperatorMean& m :
       {arithmetic_mean(), geometric_mean(), harmonic_mean(),
        power_mean(0.6), power_mean(-0.3)}) {
    const PosDefMatrix lo = mean_apply(m, a, b);
    const PosDefMatrix hi = mean_apply(m, a2, b);
    CHECK(min_eig_of_diff(hi, lo) > -1e-9);
  }
}

TEST_CASE("congruence passes through the mean") {
  RandomSource rng(57);
  const PosDefMatrix a = random_posdef(3, rng, 10.0);
  const PosDefMatrix b = random_posdef(3, rng, 10.0);
  const PosDefMatrix w = random_posdef(3, rng, 10.0);
  const CMat c = mat_power(w, 0.5).mat() * random_unitary(3, rng);
  auto conj = [&](const PosDefMatrix& x) {
    return PosDefMatrix(HermMatrix(hermitize(c * x.mat() * c.adjoint())));
  };
  for (const OperatorMean& m :
       {geometric_mean(), harmonic_mean(), power_mean(0.5)}) {
    const PosDefMatrix lhs = conj(mean_apply(m, a, b));
    const PosDefMatrix rhs = mean_apply(m, conj(a), conj(b));
    CHECK(max_abs_diff(lhs.mat(), rhs.mat()) < 1e-7);
  }
}

TEST_CASE("adjoint mean routes through inverses") {
  RandomSource rng(67);
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const PosDefMatrix b = random_posdef(2, rng, 10.0);
  const PosDefMatrix adj =
      mean_apply(adjoint_mean(arithmetic_mean()), a, b);
  const PosDefMatrix harm = mean_apply(harmonic_mean(), a, b);
  CHECK(max_abs_diff(adj.mat(), harm.mat()) < 1e-9);

  const PosDefMatrix s1 = scaled_identity(1, 1.0);
  const PosDefMatrix s3 = scaled_identity(1, 3.0);
  CHECK(mean_apply(adjoint_mean(arithmetic_mean()), s1, s3).mat()(0, 0)
            .real() == doctest::Approx(1.5).epsilon(1e-12));

  const OperatorMean base = power_mean(0.5);
  const PosDefMatrix twice =
      mean_apply(adjoint_mean(adjoint_mean(base)), a, b);
  CHECK(max_abs_diff(twice.mat(), mean_apply(base, a, b).mat()) < 1e-9);

  const PosDefMatrix routed = mean_apply(adjoint_mean(base), a, b);
  const PosDefMatrix byhand = pd_inverse(
      mean_apply(base, pd_inverse(a), pd_inverse(b)));
  CHECK(max_abs_diff(routed.mat(), byhand.mat()) < 1e-9);
}

TEST_CASE("pick representation reproduces the harmonic mean") {
  PickParams basic;
  basic.h1 = 1.0;
  basic.b = 0.0;
  basic.atoms = {{1.0, 0.5}};  // 2x/(x+1), the harmonic representer
  const OperatorMean m = mean_from_pick(basic);
  RandomSource rng(77);
  const PosDefMatrix a = random_posdef(3, rng, 10.0);
  const PosDefMatrix b = random_posdef(3, rng, 10.0);
  CHECK(max_abs_diff(mean_apply(m, a, b).mat(),
                     mean_apply(harmonic_mean(), a, b).mat()) < 1e-9);

  PickParams zero;
  zero.h1 = 0.0;
  zero.b = 0.0;
  CHECK_THROWS_AS(mean_from_pick(zero), InvalidInput);
}

TEST_CASE("dimension mismatch is rejected") {
  RandomSource rng(87);
  const PosDefMatrix a = random_posdef(2, rng, 10.0);
  const PosDefMatrix b = random_posdef(3, rng, 10.0);
  CHECK_THROWS_AS(mean_apply(arithmetic_mean(), a, b), InvalidInput);
}
