#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "lieblab/conjugate.hpp"
#include "lieblab/suites.hpp"

using namespace lieblab;

namespace {

int failures = 0;

void report(const char* id, bool pass, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  std::printf("%-3s %s  %s\n", id, pass ? "PASS" : "FAIL", buf);
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  return g;
}

// Nested conjugates need a narrowed outer bracket: the outer coarse scan
// probes its whole bracket and the inner transform's optimum must stay
// bracketed at every probe.
SearchConfig outer_cfg() {
  SearchConfig cfg;
  cfg.bracket_lo = 1e-3;
  cfg.bracket_hi = 1e3;
  return cfg;
}

ScalarFn plain_fn(double (*eval)(double), const char* label) {
  ScalarFn f;
  f.eval = eval;
  f.label = label;
  return f;
}

int suite_violations(const SuiteResult& res) {
  int v = 0;
  for (const ConcavityReport& r : res.reports) v += r.violations;
  return v;
}

// 1. full exponent/function grid of the first concavity theorem, both sign
//    boxes, 1000 trials per point, inside a two minute budget
void criterion1() {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteSpec spec = build_suite("thm2.1", {2, 3});
    SuiteRunConfig cfg;
    cfg.trials_per_point = 1000;
    cfg.rel_tol = 1e-8;
    cfg.seed = 42;
    const SuiteResult res = run_suite(spec, cfg);
    const double secs = seconds_since(t0);
    const int viol = suite_violations(res);
    report("c1", res.passed && viol == 0 && secs <= 120.0,
           "thm2.1: %zu points, 1000 trials/point, %d violations, %.1fs "
           "(budget 120s)",
           spec.points.size(), viol, secs);
  } catch (const std::exception& e) {
    report("c1", false, "exception: %s", e.what());
  }
}

// 2. directed falsification just past the concavity edge at p = q = 1
void criterion2() {
  try {
    const FalsifyReport rep =
        falsify_boundary(1.0, 1.0, 0.6, 2, 10000, 1e-8, 42);
    bool reproduced = false;
    if (rep.found) {
      const WitnessCheck chk = reevaluate_witness(rep.witness);
      reproduced = std::abs(chk.normalized_defect - rep.defect) < 1e-12;
    }
    report("c2", rep.found && reproduced,
           "p=q=1 s=0.6: violation at trial %d of %d, defect %.3g, witness "
           "reproduced",
           rep.first_trial, rep.trials_run, rep.defect);
  } catch (const std::exception& e) {
    report("c2", false, "exception: %s", e.what());
  }
}

// 3. compression counterexample closed forms, exact, plus matrix cross-check
void criterion3() {
  try {
    const CounterexampleReport rep = remark_4_6(4.0, 1.0, 1.0);
    const bool exact = rep.lhs_closed == 2.5 && rep.rhs_closed == 1.6;
    const bool matrix = std::abs(rep.lhs_matrix - 2.5) < 1e-9 &&
                        std::abs(rep.rhs_matrix - 1.6) < 1e-9;
    report("c3", exact && matrix,
           "t=4 p=1 s=1: closed (%.17g, %.17g), matrix deltas (%.2g, %.2g)",
           rep.lhs_closed, rep.rhs_closed, std::abs(rep.lhs_matrix - 2.5),
           std::abs(rep.rhs_matrix - 1.6));
  } catch (const std::exception& e) {
    report("c3", false, "exception: %s", e.what());
  }
}

// 4. mean/anti-norm concavity and mean/norm convexity over the full
//    mean/norm vocabulary, 500 trials per point
void criterion4() {
  try {
    const std::pair<double, double> pqs[3] = {
        {0.5, 0.5}, {1.0, 1.0}, {0.25, 0.75}};
    const double us[3] = {0.25, 0.5, 1.0};
    const OperatorMean sig[3] = {arithmetic_mean(), geometric_mean(),
                                 harmonic_mean()};
    struct Pt {
      FunctionalSpec fnl;
      Direction dir;
      int dim;
    };
    std::vector<Pt> pts;
    size_t k = 0;
    for (int dim : {2, 3}) {
      std::vector<NormSpec> antis;
      for (int kk = 1; kk <= dim; ++kk) antis.push_back(ky_fan_anti(kk));
      for (double al : {0.5, 1.0, 2.0})
        antis.push_back(derived_anti(trace_norm(), al));
      for (const NormSpec& an : antis) {
        const auto [p, q] = pqs[k % 3];
        const double gamma = std::max(p, q);
        FunctionalSpec fnl;
        fnl.form = "mean_norm";
        fnl.f = make_power(gamma * us[(k / 3) % 3]);
        fnl.p = p;
        fnl.q = q;
        fnl.has_mean = true;
        fnl.mean = sig[k % 3];
        fnl.has_norm = true;
        fnl.norm = an;
        pts.push_back({std::move(fnl), Direction::concave, dim});
        ++k;
      }
      const NormSpec norms[4] = {ky_fan_norm(std::min(2, dim)), trace_norm(),
                                 schatten_norm(2.0), operator_norm()};
      for (const NormSpec& nm : norms) {
        const auto [p, q] = pqs[k % 3];
        const double gamma = std::max(p, q);
        FunctionalSpec fnl;
        fnl.form = "mean_norm";
        fnl.f = make_power(-gamma * us[(k / 3) % 3]);
        fnl.p = p;
        fnl.q = q;
        fnl.has_mean = true;
        fnl.mean = sig[k % 3];
        fnl.has_norm = true;
        fnl.norm = nm;
        pts.push_back({std::move(fnl), Direction::convex, dim});
        ++k;
      }
    }
    int viol = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      MidpointTrial t;
      t.fnl = pts[i].fnl;
      t.maps = MapsMode::random_kraus;
      t.dim = pts[i].dim;
      t.kraus_rank = 2;
      t.direction = pts[i].dir;
      viol += run_midpoint(t, 500, 1e-8, derive_seed(4242, i), 1).violations;
    }
    report("c4", viol == 0,
           "means x anti-norms/norms: %zu points, 500 trials/point, %d "
           "violations",
           pts.size(), viol);
  } catch (const std::exception& e) {
    report("c4", false, "exception: %s", e.what());
  }
}

// 5. double conjugates return to the original on [0.1, 10]; closed-form
//    spot values of single transforms
void criterion5() {
  try {
    const std::vector<double> grid = log_grid(0.1, 10.0, 40);
    double worst = 0.0;
    const auto sup_err = [&](const ScalarFn& f, bool convex_side) {
      const ScalarFn inner = convex_side ? hat_fn(f) : check_fn(f);
      double err = 0.0;
      for (double x : grid) {
        const double back = convex_side
                                ? hat_transform(inner, x, outer_cfg())
                                : check_transform(inner, x, outer_cfg());
        err = std::max(err, std::abs(back - f(x)));
      }
      return err;
    };
    bool ok = true;
    const ScalarFn hats[3] = {
        make_power(2.0),
        plain_fn([](double x) { return x * x * x / 3.0; }, "x^3/3"),
        plain_fn([](double x) { return x * x + x; }, "x^2+x")};
    for (const ScalarFn& f : hats) {
      const double e = sup_err(f, true);
      worst = std::max(worst, e);
      ok = ok && e <= 1e-4;
    }
    const ScalarFn checks[3] = {make_power(0.5), make_power(0.3), make_log()};
    for (const ScalarFn& f : checks) {
      const double e = sup_err(f, false);
      worst = std::max(worst, e);
      ok = ok && e <= 1e-4;
    }

    double spot = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
      spot = std::max(
          spot, std::abs(hat_transform(make_power(2.0), t) - t * t / 4.0));
      spot = std::max(spot, std::abs(check_transform(make_power(0.5), t) +
                                     1.0 / (4.0 * t)));
    }
    ok = ok && spot <= 1e-6;
    report("c5", ok,
           "six double conjugates on [0.1,10]: sup error %.2g (tol 1e-4); "
           "spot checks %.2g (tol 1e-6)",
           worst, spot);
  } catch (const std::exception& e) {
    report("c5", false, "exception: %s", e.what());
  }
}

// 6. variational bracket: random candidates never beat the trace value and
//    the analytic optimizer attains it
void criterion6() {
  try {
    RandomSource rng(606);
    const ScalarFn root = make_power(0.5);
    const ScalarFn root_check = plain_fn(
        [](double t) { return -0.25 / t; }, "check(x^0.5)");
    const ScalarFn p08 = make_power(0.8);
    const ScalarFn p08_check = plain_fn(
        [](double t) { return -0.2 * 0.4096 * std::pow(t, -4.0); },
        "check(x^0.8)");
    const ScalarFn sq = make_power(2.0);
    const ScalarFn sq_hat =
        plain_fn([](double t) { return 0.25 * t * t; }, "hat(x^2)");
    const ScalarFn cube = make_power(3.0);
    const ScalarFn cube_hat = plain_fn(
        [](double t) { return 2.0 / (3.0 * std::sqrt(3.0)) * std::pow(t, 1.5); },
        "hat(x^3)");

    int bad = 0;
    double worst_gap = 0.0, worst_opt = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int dim = i % 2 == 0 ? 2 : 3;
      const PosLinMap phi = random_kraus_map(dim, dim, 2, rng);
      const PosLinMap psi = random_kraus_map(dim, dim, 2, rng);
      const PosDefMatrix a = random_posdef(dim, rng, 10.0);
      const PosDefMatrix b = random_posdef(dim, rng, 10.0);
      VariationalReport rep;
      bool inf_side = i < 25;
      if (inf_side)
        rep = variational_inf(i % 4 < 2 ? root : p08,
                              i % 4 < 2 ? root_check : p08_check, phi, psi,
                              0.6, 0.7, a, b, 8, rng);
      else
        rep = variational_sup(i % 4 < 2 ? sq : cube,
                              i % 4 < 2 ? sq_hat : cube_hat, phi, psi, 0.8,
                              0.5, a, b, 8, rng);
      const double gap =
          inf_side ? rep.target - rep.best : rep.best - rep.target;
      const double opt = std::abs(rep.at_optimizer - rep.target);
      worst_gap = std::max(worst_gap, gap);
      worst_opt = std::max(worst_opt, opt);
      if (gap > 1e-6 || opt > 1e-6) ++bad;
    }
    report("c6", bad == 0,
           "50 instances: worst candidate overshoot %.2g, worst optimizer "
           "mismatch %.2g (tol 1e-6)",
           worst_gap, worst_opt);
  } catch (const std::exception& e) {
    report("c6", false, "exception: %s", e.what());
  }
}

// 7. second-derivative probe along random positive-definite segments, plus
//    the scalar fixture with curvature -1/4
void criterion7() {
  try {
    RandomSource rng(707);
    int bad = 0;
    double worst = -1.0;
    for (int i = 0; i < 100; ++i) {
      const int dim = i % 2 == 0 ? 2 : 3;
      const double p = rng.uniform(0.05, 0.95);
      const double q = rng.uniform(0.05, 1.0 - p);
      const PosLinMap phi = random_kraus_map(dim, dim, 2, rng);
      const PosLinMap psi = random_kraus_map(dim, dim, 2, rng);
      const auto segment = [&rng, dim]() {
        const PosDefMatrix a0 = random_posdef(dim, rng, 10.0);
        const HermMatrix h = random_herm(dim, rng);
        const SpectralDecomp e = eig_herm(h);
        const double hn = std::max(std::abs(e.eigenvalues.front()),
                                   std::abs(e.eigenvalues.back()));
        const double scale = 0.4 * a0.min_eig() / (0.15 * hn);
        return LineSegment(a0, HermMatrix(scale * h.mat()), 0.15);
      };
      const LineSegment sa = segment();
      const LineSegment sb = segment();
      for (double x : {0.01, 0.05, 0.1}) {
        const EpsteinProbe probe = epstein_probe(p, q, phi, psi, sa, sb, x);
        const double margin =
            probe.second_derivative - 1e-6 * (1.0 + std::abs(probe.value));
        worst = std::max(worst, probe.second_derivative);
        if (margin > 0.0) ++bad;
      }
    }
    const PosDefMatrix base{HermMatrix(0.9 * CMat::identity(1))};
    const LineSegment fa(base, HermMatrix(CMat::identity(1)), 0.2);
    const LineSegment fb(base, HermMatrix(CMat::identity(1)), 0.2);
    const PosLinMap id1 = PosLinMap::identity(1);
    const EpsteinProbe fix = epstein_probe(0.5, 0.5, id1, id1, fa, fb, 0.1);
    const bool fixture = std::abs(fix.second_derivative + 0.25) < 1e-6;
    report("c7", bad == 0 && fixture,
           "100 segments x 3 probe points: %d positive curvatures (worst "
           "%.2g); scalar fixture g''=%.8f",
           bad, worst, fix.second_derivative);
  } catch (const std::exception& e) {
    report("c7", false, "exception: %s", e.what());
  }
}

// 8. later concavity/convexity suites at 500 trials per point
void criterion8() {
  try {
    int viol = 0;
    size_t points = 0;
    bool passed = true;
    for (const char* id : {"thm5.2", "range-ii", "range-iv"}) {
      const SuiteSpec spec = build_suite(id, {2, 3});
      SuiteRunConfig cfg;
      cfg.trials_per_point = 500;
      cfg.rel_tol = 1e-8;
      cfg.seed = 42;
      const SuiteResult res = run_suite(spec, cfg);
      viol += suite_violations(res);
      points += spec.points.size();
      passed = passed && res.passed;
    }
    report("c8", passed && viol == 0,
           "thm5.2 + range-ii + range-iv: %zu points, 500 trials/point, %d "
           "violations",
           points, viol);
  } catch (const std::exception& e) {
    report("c8", false, "exception: %s", e.what());
  }
}

// 9. mollification error of the transform shrinks monotonically with eps
void criterion9() {
  try {
    const ScalarFn sq = make_power(2.0);
    const std::vector<double> grid = log_grid(0.5, 2.0, 31);
    std::vector<double> sups;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      const ScalarFn smooth = mollify(sq, eps);
      double sup = 0.0;
      for (double t : grid)
        sup = std::max(sup, std::abs(hat_transform(smooth, t) -
                                     hat_transform(sq, t)));
      sups.push_back(sup);
    }
    const bool decreasing =
        sups[0] > sups[1] && sups[1] > sups[2] && sups[2] > sups[3];
    report("c9", decreasing,
           "sup|hat(mollify(x^2,eps)) - hat(x^2)| on [0.5,2]: %.3g > %.3g > "
           "%.3g > %.3g",
           sups[0], sups[1], sups[2], sups[3]);
  } catch (const std::exception& e) {
    report("c9", false, "exception: %s", e.what());
  }
}

json zero_runtime(json j) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items()) {
      if (key == "runtime_ms")
        value = 0.0;
      else
        value = zero_runtime(value);
    }
  } else if (j.is_array()) {
    for (auto& e : j) e = zero_runtime(e);
  }
  return j;
}

// 10. CLI determinism: identical reports apart from runtime_ms
void criterion10(const char* cli) {
  try {
    const std::string base = std::string("'") + cli + "' verify thm2.1 --seed 42";
    const std::string f1 = "acceptance_run1.json";
    const std::string f2 = "acceptance_run2.json";
    const int rc1 = std::system((base + " --out " + f1).c_str());
    const int rc2 = std::system((base + " --out " + f2).c_str());
    if (rc1 != 0 || rc2 != 0) {
      report("c10", false, "verify thm2.1 exited with %d / %d", rc1, rc2);
      return;
    }
    const json j1 = load_json_file(f1);
    const json j2 = load_json_file(f2);
    const std::string d1 = zero_runtime(j1).dump(2);
    const std::string d2 = zero_runtime(j2).dump(2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    report("c10", d1 == d2,
           "two runs of `verify thm2.1 --seed 42`: %s after zeroing "
           "runtime_ms (%zu bytes)",
           d1 == d2 ? "byte-identical" : "DIFFER", d1.size());
  } catch (const std::exception& e) {
    report("c10", false, "exception: %s", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (argc > 1)
    criterion10(argv[1]);
  else
    report("c10", false, "no CLI path supplied on the command line");
  if (failures > 0) std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
