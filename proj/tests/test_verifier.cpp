#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lieblab/suites.hpp"

using namespace lieblab;

namespace {

FunctionalSpec power_lieb(double s, double p, double q) {
  FunctionalSpec fnl;
  fnl.form = "lieb_trace";
  fnl.f = make_power(s);
  fnl.p = p;
  fnl.q = q;
  return fnl;
}

}  // namespace

TEST_CASE("a jointly linear functional never violates either direction") {
  // q = 0 freezes the second slot, so the trace is linear in A and constant
  // in B
  MidpointTrial t;
  t.fnl = power_lieb(1.0, 1.0, 0.0);
  t.maps = MapsMode::random_kraus;
  t.dim = 2;
  t.kraus_rank = 2;
  for (Direction d : {Direction::concave, Direction::convex}) {
    t.direction = d;
    const ConcavityReport rep = run_midpoint(t, 300, 1e-8, 11, 1);
    CHECK(rep.trials_run == 300);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_witness.is_null());
  }
}

TEST_CASE("a proven convex functional fails the concavity direction fast") {
  MidpointTrial t;
  t.fnl = power_lieb(-1.0, 0.5, 0.5);
  t.maps = MapsMode::random_kraus;
  t.dim = 2;
  t.kraus_rank = 2;
  t.direction = Direction::concave;  // wrong on purpose
  const ConcavityReport rep = run_midpoint(t, 100, 1e-8, 5, 1);
  CHECK(rep.violations > 0);
  CHECK(rep.worst_gap < 0.0);
  CHECK_FALSE(rep.worst_witness.is_null());

  t.direction = Direction::convex;
  const ConcavityReport ok = run_midpoint(t, 100, 1e-8, 5, 1);
  CHECK(ok.violations == 0);
}

TEST_CASE("midpoint runs are deterministic and thread-count independent") {
  MidpointTrial t;
  t.fnl = power_lieb(0.5, 1.0, 1.0);
  t.maps = MapsMode::random_kraus;
  t.dim = 3;
  t.kraus_rank = 2;
  t.direction = Direction::concave;
  const ConcavityReport r1 = run_midpoint(t, 200, 1e-8, 42, 1);
  const ConcavityReport r2 = run_midpoint_serial(t, 200, 1e-8, 42);
  const ConcavityReport r4 = run_midpoint(t, 200, 1e-8, 42, 4);
  CHECK(r1.violations == r2.violations);
  CHECK(r1.worst_gap == r2.worst_gap);
  CHECK(r1.worst_gap == r4.worst_gap);
  CHECK(r1.worst_witness == r4.worst_witness);
  const ConcavityReport other = run_midpoint(t, 200, 1e-8, 43, 1);
  CHECK(other.worst_gap != r1.worst_gap);
}

TEST_CASE("witnesses re-evaluate to the reported defect") {
  const FalsifyReport rep = falsify_boundary(1.0, 1.0, 0.6, 2, 10000, 1e-8, 42);
  REQUIRE(rep.found);
  CHECK(rep.first_trial >= 0);
  CHECK(rep.defect < -1e-8);
  const WitnessCheck chk = reevaluate_witness(rep.witness);
  CHECK(std::abs(chk.normalized_defect - rep.defect) < 1e-12);
  CHECK(chk.gmid - 0.5 * (chk.g1 + chk.g2) <
        -1e-8 * (1.0 + std::abs(chk.g1) + std::abs(chk.g2)));
}

TEST_CASE("the boundary search rejects exponents inside the proven region") {
  CHECK_THROWS_AS(falsify_boundary(1.0, 1.0, 0.4, 2, 100, 1e-8, 1),
                  InvalidInput);
  CHECK_THROWS_AS(falsify_boundary(-0.5, 1.0, 0.8, 2, 100, 1e-8, 1),
                  InvalidInput);
  // s exactly at the concavity edge runs and reports no violation
  const FalsifyReport edge = falsify_boundary(1.0, 1.0, 0.5, 2, 50, 1e-8, 7);
  CHECK(edge.trials_run == 50);
  CHECK_FALSE(edge.found);
}

TEST_CASE("closed forms of the compression counterexample") {
  const CounterexampleReport rep = remark_4_6(4.0, 1.0, 1.0);
  CHECK(rep.lhs_closed == 2.5);
  CHECK(rep.rhs_closed == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(std::abs(rep.lhs_matrix - rep.lhs_closed) < 1e-9);
  CHECK(std::abs(rep.rhs_matrix - rep.rhs_closed) < 1e-9);
  CHECK(rep.lhs_closed > rep.rhs_closed);

  for (double t : {2.0, 4.0, 9.0})
    for (double p : {0.5, 1.0}) {
      const CounterexampleReport r = remark_4_6(t, p, 1.0);
      CHECK(std::abs(r.lhs_matrix - r.lhs_closed) < 1e-9);
      CHECK(std::abs(r.rhs_matrix - r.rhs_closed) < 1e-9);
      CHECK(r.lhs_closed > r.rhs_closed);  // midpoint exceeds the endpoints
    }
}

TEST_CASE("partial sum comparisons") {
  CHECK(weakly_majorized({1.0, 1.0}, {2.0, 0.0}));
  CHECK_FALSE(weakly_majorized({3.0, 1.0}, {2.0, 2.0}));
  CHECK(weakly_majorized({2.0, 2.0}, {2.0, 2.0}));
  CHECK(weakly_supermajorized({1.0, 1.0}, {2.0, 0.0}));
  CHECK_FALSE(weakly_supermajorized({0.5, 3.0}, {1.0, 1.0}));
  CHECK(weakly_supermajorized({0.9, 1.0}, {1.0, 1.0}, 0.2));
  CHECK_THROWS_AS(weakly_majorized({1.0}, {1.0, 2.0}), InvalidInput);
}

TEST_CASE("spectra of the basic forms on commuting input") {
  const PosLinMap id = PosLinMap::identity(2);
  SpectralDecomp ea;
  ea.eigenvalues = {1.0, 4.0};
  ea.unitary = CMat::identity(2);
  const PosDefMatrix a = PosDefMatrix::from_eig(std::move(ea));
  SpectralDecomp eb;
  eb.eigenvalues = {9.0, 16.0};
  eb.unitary = CMat::identity(2);
  const PosDefMatrix b = PosDefMatrix::from_eig(std::move(eb));

  const std::vector<double> ls = lieb_spectrum(id, id, 1.0, 1.0, a, b);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == doctest::Approx(9.0));
  CHECK(ls[1] == doctest::Approx(64.0));

  const std::vector<double> ms = mean_root_spectrum(
      arithmetic_mean(), id, id, 1.0, 1.0, 1.0, a, b);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] == doctest::Approx(5.0));
  CHECK(ms[1] == doctest::Approx(10.0));

  CHECK_THROWS_AS(
      mean_root_spectrum(arithmetic_mean(), id, id, 1.0, 1.0, 0.0, a, b),
      InvalidInput);
}

TEST_CASE("spectral passage holds on both boxes") {
  const PassageReport pos =
      passage_check(Direction::concave, 0.5, 1.0, 2, 40, 17);
  CHECK(pos.samples == 40);
  CHECK(pos.premise_held == 40);
  CHECK(pos.conclusion_checks > 0);
  CHECK(pos.conclusion_failures == 0);

  const PassageReport cvx =
      passage_check(Direction::convex, 0.5, 0.5, 2, 40, 18);
  CHECK(cvx.premise_held == 40);
  CHECK(cvx.conclusion_failures == 0);

  const PassageReport neg =
      passage_check(Direction::concave, -0.5, -1.0, 2, 30, 19);
  CHECK(neg.premise_held == 30);
  CHECK(neg.conclusion_failures == 0);

  CHECK_THROWS_AS(passage_check(Direction::concave, 1.5, 0.5, 2, 10, 1),
                  InvalidInput);
  CHECK_THROWS_AS(passage_check(Direction::concave, 0.0, 0.0, 2, 10, 1),
                  InvalidInput);
  CHECK_THROWS_AS(passage_check(Direction::concave, 0.5, -0.5, 2, 10, 1),
                  InvalidInput);
}

TEST_CASE("suite catalogue and identifier normalization") {
  const auto& ids = suite_ids();
  REQUIRE(ids.size() == 13);
  for (const std::string& id : ids) {
    const SuiteSpec spec = build_suite(id, {2, 3});
    CHECK(spec.theorem_id == id);
    CHECK_FALSE(spec.points.empty());
    for (const SuitePoint& pt : spec.points) {
      CHECK_FALSE(pt.label.empty());
      CHECK(pt.params.is_object());
    }
  }
  CHECK(build_suite("thm2_1", {2}).theorem_id == "thm2.1");
  CHECK(build_suite("range_ii", {2}).theorem_id == "range-ii");
  CHECK_THROWS_AS(build_suite("thm9.9", {2}), ConfigError);
  CHECK_THROWS_AS(build_suite("thm2.1", {}), ConfigError);
  CHECK_THROWS_AS(build_suite("thm2.1", {40}), ConfigError);
}

TEST_CASE("hypothesis gate rejects a degenerate exponent pair") {
  SuiteSpec spec = build_suite("thm2.1", {2});
  SuitePoint bad = spec.points.front();
  bad.fnl.p = 0.0;
  bad.fnl.q = 0.0;
  CHECK_THROWS_WITH_AS(assert_hypothesis("thm2.1", bad),
                       doctest::Contains("(p,q) != (0,0)"), ConfigError);
  spec.points.push_back(bad);
  SuiteRunConfig cfg;
  cfg.trials_per_point = 10;
  CHECK_THROWS_AS(run_suite(spec, cfg), ConfigError);
}

TEST_CASE("hypothesis gate rejects mismatched directions and functions") {
  SuiteSpec spec = build_suite("thm2.1", {2});
  SuitePoint pt = spec.points.front();

  SuitePoint wrong_fn = pt;
  wrong_fn.fnl.f = make_power(3.0);  // not operator monotone at these slots
  CHECK_THROWS_AS(assert_hypothesis("thm2.1", wrong_fn), ConfigError);

  SuitePoint wrong_form = pt;
  wrong_form.fnl.form = "mean_trace";
  wrong_form.fnl.has_mean = true;
  wrong_form.fnl.mean = arithmetic_mean();
  CHECK_THROWS_AS(assert_hypothesis("thm2.1", wrong_form), ConfigError);

  // an uncertifiable function is rejected even when it satisfies the
  // hypothesis
  SuitePoint opaque = pt;
  opaque.fnl.f.eval = [](double x) { return std::sqrt(x); };
  opaque.fnl.f.desc.node = std::monostate{};
  CHECK_THROWS_AS(assert_hypothesis("thm2.1", opaque), ConfigError);

  CHECK_THROWS_AS(assert_hypothesis("nope", pt), ConfigError);
}

TEST_CASE("a small suite runs clean end to end") {
  const SuiteSpec spec = build_suite("range-i", {2});
  SuiteRunConfig cfg;
  cfg.trials_per_point = 60;
  cfg.seed = 31;
  const SuiteResult res = run_suite(spec, cfg);
  REQUIRE(res.reports.size() == spec.points.size());
  CHECK(res.passed);
  for (const ConcavityReport& rep : res.reports) {
    CHECK(rep.trials_run == 60);
    CHECK(rep.violations == 0);
  }
  const json j = suite_report_json(res, cfg);
  CHECK(j["suite"] == "range-i");
  CHECK(j["passed"] == true);
  CHECK(j["points"].size() == spec.points.size());
  for (const auto& e : j["points"]) {
    CHECK(e.contains("label"));
    CHECK(e.contains("violations"));
    CHECK_FALSE(e.contains("witness"));
  }
}

TEST_CASE("suite runs are reproducible") {
  const SuiteSpec spec = build_suite("thm5.6", {2});
  SuiteRunConfig cfg;
  cfg.trials_per_point = 40;
  cfg.seed = 99;
  const SuiteResult r1 = run_suite(spec, cfg);
  const SuiteResult r2 = run_suite(spec, cfg);
  REQUIRE(r1.reports.size() == r2.reports.size());
  for (size_t i = 0; i < r1.reports.size(); ++i) {
    CHECK(r1.reports[i].worst_gap == r2.reports[i].worst_gap);
    CHECK(r1.reports[i].violations == r2.reports[i].violations);
  }
}

TEST_CASE("exploratory sweep carries no claim") {
  const json j = missing_region_sweep(2, 15, 1e-8, 7);
  CHECK(j["claim"] == "none");
  REQUIRE(j["cells"].is_array());
  CHECK(j["cells"].size() >= 6);
  for (const auto& cell : j["cells"]) {
    CHECK(cell.contains("p"));
    CHECK(cell.contains("q"));
    CHECK(cell.contains("s"));
    CHECK(cell.contains("frac_convexity_defects"));
    const double frac = cell["frac_convexity_defects"].get<double>();
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
  }
}
