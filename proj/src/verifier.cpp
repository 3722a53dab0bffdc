#include "lieblab/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace lieblab {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

struct TrialTuple {
  PosLinMap phi;
  PosLinMap psi;
  PosDefMatrix a1, b1, a2, b2;
};

PosLinMap draw_phi(const MidpointTrial& t, RandomSource& rng) {
  switch (t.maps) {
    case MapsMode::identity:
    case MapsMode::phi_identity:
      return PosLinMap::identity(t.dim);
    case MapsMode::congruence:
    case MapsMode::congruence_id:
      return random_congruence_map(t.dim, rng);
    default:
      return random_kraus_map(t.dim, t.dim, t.kraus_rank, rng);
  }
}

PosLinMap draw_psi(const MidpointTrial& t, RandomSource& rng) {
  switch (t.maps) {
    case MapsMode::identity:
    case MapsMode::psi_identity:
    case MapsMode::congruence_id:
      return PosLinMap::identity(t.dim);
    case MapsMode::congruence:
      return random_congruence_map(t.dim, rng);
    default:
      return random_kraus_map(t.dim, t.dim, t.kraus_rank, rng);
  }
}

TrialTuple sample_tuple(const MidpointTrial& t, RandomSource& rng) {
  PosLinMap phi = draw_phi(t, rng);
  PosLinMap psi = draw_psi(t, rng);
  PosDefMatrix a1 = random_posdef(t.dim, rng, t.cond_cap);
  PosDefMatrix b1 = random_posdef(t.dim, rng, t.cond_cap);
  PosDefMatrix a2 = random_posdef(t.dim, rng, t.cond_cap);
  PosDefMatrix b2 = random_posdef(t.dim, rng, t.cond_cap);
  return {std::move(phi), std::move(psi), std::move(a1), std::move(b1),
          std::move(a2), std::move(b2)};
}

struct TrialValues {
  double g1, g2, gmid, defect;  // defect normalized by 1 + |g1| + |g2|
};

TrialValues evaluate_tuple(const MidpointTrial& t, const TrialTuple& tu) {
  TrialValues v{};
  v.g1 = eval_functional(t.fnl, tu.phi, tu.psi, tu.a1, tu.b1);
  v.g2 = eval_functional(t.fnl, tu.phi, tu.psi, tu.a2, tu.b2);
  const PosDefMatrix am = pd_midpoint(tu.a1, tu.a2);
  const PosDefMatrix bm = pd_midpoint(tu.b1, tu.b2);
  v.gmid = eval_functional(t.fnl, tu.phi, tu.psi, am, bm);
  const double raw = t.direction == Direction::concave
                         ? v.gmid - 0.5 * (v.g1 + v.g2)
                         : 0.5 * (v.g1 + v.g2) - v.gmid;
  v.defect = raw / (1.0 + std::abs(v.g1) + std::abs(v.g2));
  return v;
}

void check_run_args(const MidpointTrial& t, int trials, double rel_tol) {
  if (trials < 1) throw InvalidInput("run_midpoint: trials must be >= 1");
  if (!(rel_tol > 0.0))
    throw InvalidInput("run_midpoint: rel_tol must be positive");
  if (t.dim < 1 || t.dim > 16)
    throw InvalidInput("run_midpoint: dim must lie in [1, 16]");
  if (t.kraus_rank < 1)
    throw InvalidInput("run_midpoint: kraus_rank must be >= 1");
  if (!(t.cond_cap >= 1.0))
    throw InvalidInput("run_midpoint: cond_cap must be >= 1");
}

json tuple_witness(const MidpointTrial& t, const TrialTuple& tu,
                   const TrialValues& v, int trial, std::uint64_t seed) {
  json w;
  w["trial"] = trial;
  w["seed"] = seed;
  w["direction"] = t.direction == Direction::concave ? "concave" : "convex";
  w["g1"] = v.g1;
  w["g2"] = v.g2;
  w["gmid"] = v.gmid;
  w["defect"] = v.defect;
  w["functional"] = to_json(t.fnl);
  w["phi"] = to_json(tu.phi);
  w["psi"] = to_json(tu.psi);
  w["a1"] = to_json(tu.a1.mat());
  w["b1"] = to_json(tu.b1.mat());
  w["a2"] = to_json(tu.a2.mat());
  w["b2"] = to_json(tu.b2.mat());
  return w;
}

}  // namespace

std::string maps_mode_name(MapsMode m) {
  switch (m) {
    case MapsMode::identity:
      return "identity";
    case MapsMode::random_kraus:
      return "random_kraus";
    case MapsMode::congruence:
      return "congruence";
    case MapsMode::congruence_id:
      return "congruence_id";
    case MapsMode::phi_identity:
      return "phi_identity";
    case MapsMode::psi_identity:
      return "psi_identity";
  }
  return "unknown";
}

ConcavityReport run_midpoint(const MidpointTrial& t, int trials,
                             double rel_tol, std::uint64_t seed, int jobs) {
  check_run_args(t, trials, rel_tol);
  if (jobs < 1) throw InvalidInput("run_midpoint: jobs must be >= 1");
  const auto t0 = clock_type::now();

  std::vector<double> defect(static_cast<size_t>(trials), 0.0);
  std::vector<signed char> failed(static_cast<size_t>(trials), 0);

  auto body = [&](int i) {
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    try {
      const TrialTuple tu = sample_tuple(t, rng);
      defect[static_cast<size_t>(i)] = evaluate_tuple(t, tu).defect;
    } catch (const std::exception&) {
      failed[static_cast<size_t>(i)] = 1;
    }
  };

#ifdef LIEBLAB_HAVE_OPENMP
  if (jobs > 1) {
#pragma omp parallel for num_threads(jobs) schedule(static)
    for (int i = 0; i < trials; ++i) body(i);
  } else {
    for (int i = 0; i < trials; ++i) body(i);
  }
#else
  for (int i = 0; i < trials; ++i) body(i);
#endif

  for (int i = 0; i < trials; ++i) {
    if (!failed[static_cast<size_t>(i)]) continue;
    // Reproduce the failure serially to recover its message.
    std::string what = "did not reproduce on the serial re-run";
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    try {
      const TrialTuple tu = sample_tuple(t, rng);
      evaluate_tuple(t, tu);
    } catch (const std::exception& e) {
      what = e.what();
    }
    std::ostringstream os;
    os << "run_midpoint: trial " << i << " (seed " << seed
       << ") raised: " << what;
    throw ConfigError(os.str());
  }

  ConcavityReport rep;
  rep.trials_run = trials;
  int worst_idx = -1;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const double d = defect[static_cast<size_t>(i)];
    if (d < -rel_tol) ++rep.violations;
    if (d < worst) {
      worst = d;
      worst_idx = i;
    }
  }
  rep.worst_gap = worst;
  if (rep.violations > 0 && worst_idx >= 0) {
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(worst_idx)));
    const TrialTuple tu = sample_tuple(t, rng);
    const TrialValues v = evaluate_tuple(t, tu);
    rep.worst_witness = tuple_witness(t, tu, v, worst_idx, seed);
  }
  rep.runtime_ms = ms_since(t0);
  return rep;
}

ConcavityReport run_midpoint_serial(const MidpointTrial& t, int trials,
                                    double rel_tol, std::uint64_t seed) {
  return run_midpoint(t, trials, rel_tol, seed, 1);
}

WitnessCheck reevaluate_witness(const json& witness) {
  if (!witness.is_object())
    throw ConfigError("witness: expected an object");
  MidpointTrial t;
  t.fnl = functional_from_json(witness.at("functional"));
  t.direction = witness.at("direction").get<std::string>() == "convex"
                    ? Direction::convex
                    : Direction::concave;
  auto pd = [](const json& j) {
    return PosDefMatrix(HermMatrix(cmat_from_json(j)));
  };
  TrialTuple tu{map_from_json(witness.at("phi")),
                map_from_json(witness.at("psi")), pd(witness.at("a1")),
                pd(witness.at("b1")), pd(witness.at("a2")),
                pd(witness.at("b2"))};
  const TrialValues v = evaluate_tuple(t, tu);
  return {v.g1, v.g2, v.gmid, v.defect};
}

FalsifyReport falsify_boundary(double p, double q, double s, int dim,
                               int trials, double rel_tol,
                               std::uint64_t seed) {
  if (!(p > 0.0) || !(q > 0.0))
    throw InvalidInput("falsify_boundary: requires p, q > 0");
  if (s < 1.0 / (p + q) - 1e-12)
    throw InvalidInput(
        "falsify_boundary: s < 1/(p+q) lies inside the proven concavity "
        "region; there is nothing to falsify there");
  if (trials < 1) throw InvalidInput("falsify_boundary: trials must be >= 1");

  MidpointTrial t;
  t.fnl.form = "lieb_trace";
  t.fnl.f = make_power(s);
  t.fnl.p = p;
  t.fnl.q = q;
  t.maps = MapsMode::congruence_id;
  t.dim = dim;
  t.direction = Direction::concave;
  check_run_args(t, trials, rel_tol);

  const auto t0 = clock_type::now();
  FalsifyReport rep;
  for (int i = 0; i < trials; ++i) {
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const TrialTuple tu = sample_tuple(t, rng);
    const TrialValues v = evaluate_tuple(t, tu);
    rep.trials_run = i + 1;
    if (v.defect < -rel_tol) {
      rep.found = true;
      rep.first_trial = i;
      rep.defect = v.defect;
      rep.witness = tuple_witness(t, tu, v, i, seed);
      break;
    }
  }
  rep.runtime_ms = ms_since(t0);
  return rep;
}

CounterexampleReport remark_4_6(double t, double p, double s) {
  if (!(t > 0.0) || !(p > 0.0) || !(s > 0.0))
    throw InvalidInput("remark_4_6: requires t, p, s > 0");
  CounterexampleReport rep;
  rep.lhs_closed = std::pow((1.0 + t) / 2.0, s);
  rep.rhs_closed = std::pow((1.0 + std::pow(t, -p)) / 2.0, -s / p);

  const double isq = 0.70710678118654752440;
  CMat k(1, 2);
  k(0, 0) = isq;
  k(0, 1) = isq;
  const PosLinMap comp = PosLinMap::compression(k);
  const PosLinMap unit1 = PosLinMap::identity(1);
  CMat am(2, 2);
  am(0, 0) = 1.0;
  am(1, 1) = t;
  const PosDefMatrix a{HermMatrix(am)};
  const PosDefMatrix one{HermMatrix(CMat::identity(1))};
  rep.lhs_matrix = lieb_trace(make_power(s), comp, unit1, 1.0, 1.0, a, one);
  rep.rhs_matrix =
      lieb_trace(make_power(-s / p), comp, unit1, -p, 1.0, a, one);
  return rep;
}

namespace {

bool partial_sum_compare(std::vector<double>& u, std::vector<double>& v,
                         double tol, bool largest, bool u_below) {
  if (u.size() != v.size())
    throw InvalidInput("majorization: vectors must share one length");
  if (largest) {
    std::sort(u.begin(), u.end(), std::greater<double>());
    std::sort(v.begin(), v.end(), std::greater<double>());
  } else {
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
  }
  double su = 0.0, sv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    if (u_below ? su > sv + tol : su < sv - tol) return false;
  }
  return true;
}

}  // namespace

bool weakly_majorized(std::vector<double> u, std::vector<double> v,
                      double tol) {
  return partial_sum_compare(u, v, tol, true, true);
}

bool weakly_supermajorized(std::vector<double> u, std::vector<double> v,
                           double tol) {
  return partial_sum_compare(u, v, tol, false, false);
}

std::vector<double> lieb_spectrum(const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b) {
  const PosDefMatrix phn = phi.apply_pd(mat_power(a, p));
  const HermMatrix psn = psi.apply(mat_power(b, q).base());
  const PosDefMatrix s = mat_power(phn, 0.5);
  return eig_herm(HermMatrix(hermitize(s.mat() * psn.mat() * s.mat())))
      .eigenvalues;
}

std::vector<double> mean_root_spectrum(const OperatorMean& sigma,
                                       const PosLinMap& phi,
                                       const PosLinMap& psi, double p, double q,
                                       double gamma, const PosDefMatrix& a,
                                       const PosDefMatrix& b) {
  if (gamma == 0.0)
    throw InvalidInput("mean_root_spectrum: gamma must be nonzero");
  const PosDefMatrix m = mean_apply(sigma, phi.apply_pd(mat_power(a, p)),
                                    psi.apply_pd(mat_power(b, q)));
  std::vector<double> vals = m.eig().eigenvalues;
  for (double& v : vals) v = std::pow(v, 1.0 / gamma);
  std::sort(vals.begin(), vals.end());
  return vals;
}

PassageReport passage_check(Direction dir, double p, double q, int dim,
                            int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("passage_check: samples must be >= 1");
  const bool pos_box = p >= 0.0 && q >= 0.0 && p <= 1.0 && q <= 1.0;
  const bool neg_box = p <= 0.0 && q <= 0.0 && p >= -1.0 && q >= -1.0;
  if ((!pos_box && !neg_box) || (p == 0.0 && q == 0.0))
    throw InvalidInput(
        "passage_check: (p, q) must lie in [0,1]^2 or [-1,0]^2 and not both "
        "be zero");
  const double gamma = pos_box ? std::max(p, q) : std::min(p, q);

  MidpointTrial t;
  t.fnl.f = make_power(1.0);  // spectra only; the battery supplies f
  t.fnl.p = p;
  t.fnl.q = q;
  t.maps = MapsMode::random_kraus;
  t.dim = dim;
  t.direction = dir;
  check_run_args(t, samples, 1.0);

  const OperatorMean means[3] = {arithmetic_mean(), geometric_mean(),
                                 harmonic_mean()};

  std::vector<ScalarFn> battery;
  if (dir == Direction::concave) {
    battery.push_back(make_log());
    battery.push_back(make_power(0.5));
    PickParams pk;
    pk.h1 = 0.5;
    pk.b = 0.0;
    pk.atoms = {{1.0, 0.25}};
    battery.push_back(make_pick_integral(pk));  // x / (x + 1)
  } else {
    battery.push_back(make_power(2.0));
    battery.push_back(make_power(3.0));
  }

  // Convex direction looks at F^{-1}, i.e. the -1/gamma root of the mean.
  const double root = dir == Direction::concave ? gamma : -gamma;

  PassageReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const TrialTuple tu = sample_tuple(t, rng);
    const OperatorMean& sigma = means[i % 3];
    const auto s1 =
        mean_root_spectrum(sigma, tu.phi, tu.psi, p, q, root, tu.a1, tu.b1);
    const auto s2 =
        mean_root_spectrum(sigma, tu.phi, tu.psi, p, q, root, tu.a2, tu.b2);
    const auto sm = mean_root_spectrum(sigma, tu.phi, tu.psi, p, q, root,
                                       pd_midpoint(tu.a1, tu.a2),
                                       pd_midpoint(tu.b1, tu.b2));
    std::vector<double> doubled;
    doubled.reserve(sm.size() * 2);
    for (double v : sm) {
      doubled.push_back(v);
      doubled.push_back(v);
    }
    std::vector<double> concat = s1;
    concat.insert(concat.end(), s2.begin(), s2.end());

    double scale = 0.0;
    for (double v : concat) scale += std::abs(v);
    const double slack = 1e-12 * (1.0 + scale);
    const bool premise = dir == Direction::concave
                             ? weakly_supermajorized(doubled, concat, slack)
                             : weakly_majorized(doubled, concat, slack);
    if (!premise) continue;
    ++rep.premise_held;
    for (const ScalarFn& f : battery) {
      auto total = [&f](const std::vector<double>& vals) {
        double acc = 0.0;
        for (double v : vals) acc += f.eval(v);
        return acc;
      };
      const double lhs = 2.0 * total(sm);
      const double rhs = total(s1) + total(s2);
      const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
      const double defect =
          (dir == Direction::concave ? lhs - rhs : rhs - lhs) / scale;
      ++rep.conclusion_checks;
      if (defect < -1e-8) ++rep.conclusion_failures;
      rep.worst_defect = std::min(rep.worst_defect, defect);
    }
  }
  return rep;
}

json missing_region_sweep(int dim, int trials_per_cell, double rel_tol,
                          std::uint64_t seed) {
  if (trials_per_cell < 1)
    throw InvalidInput("missing_region_sweep: trials_per_cell must be >= 1");
  // Joint convexity of Tr (Phi(A^p)^{1/2} Psi(B^q) Phi(A^p)^{1/2})^s is open
  // for -1 < p < 0, 1 < q < 2, 1/(p+q) <= s (!= 1) < min{1/(p+1), 1/(q-1)},
  // and for the mirrored cells (-p, -q, -s).  Nothing is asserted here; the
  // sweep only reports how often random midpoint trials show a convexity
  // defect in a handful of cells.
  static const double cells[][3] = {
      {-0.5, 1.5, 1.5},   {-0.25, 1.25, 1.2}, {-0.75, 1.75, 1.2},
      {-0.5, 1.25, 1.6},  {-0.25, 1.75, 0.8}, {-0.6, 1.4, 1.8},
      {0.5, -1.5, -1.5},  {0.25, -1.75, -0.8}};
  json out;
  out["claim"] = "none";
  out["note"] =
      "open-question cells: -1<p<0, 1<q<2, 1/(p+q) <= s (!=1) < "
      "min{1/(p+1),1/(q-1)}, plus mirrored (-p,-q,-s) cells; convexity "
      "defect fractions are reported for orientation only";
  out["dim"] = dim;
  out["trials_per_cell"] = trials_per_cell;
  json arr = json::array();
  std::uint64_t cell_index = 0;
  for (const auto& c : cells) {
    MidpointTrial t;
    t.fnl.form = "lieb_trace";
    t.fnl.f = make_power(c[2]);
    t.fnl.p = c[0];
    t.fnl.q = c[1];
    t.maps = MapsMode::random_kraus;
    t.dim = dim;
    t.direction = Direction::convex;
    const ConcavityReport rx =
        run_midpoint(t, trials_per_cell, rel_tol, derive_seed(seed, cell_index), 1);
    json cell;
    cell["p"] = c[0];
    cell["q"] = c[1];
    cell["s"] = c[2];
    cell["frac_convexity_defects"] =
        static_cast<double>(rx.violations) / trials_per_cell;
    cell["worst_gap"] = rx.worst_gap;
    arr.push_back(std::move(cell));
    ++cell_index;
  }
  out["cells"] = std::move(arr);
  return out;
}

}  // namespace lieblab
