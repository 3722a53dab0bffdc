#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lieblab/conjugate.hpp"
#include "lieblab/suites.hpp"

using namespace lieblab;

namespace {

std::string shortest(double x) { return json(x).dump(); }

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + out_path + " for writing");
  f << text << "\n";
  if (!f) throw ConfigError("failed while writing " + out_path);
}

// Relative paths of the eval command resolve against LIEBLAB_SUITE_DIR when
// it is set.
std::string resolve_fixture(const std::string& path) {
  const char* root = std::getenv("LIEBLAB_SUITE_DIR");
  if (root == nullptr || *root == '\0') return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(root) / p).string();
}

// --fn accepts the descriptor inline or as a path to a JSON file.
json descriptor_arg(const std::string& arg) {
  const auto parsed = json::parse(arg, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  return load_json_file(arg);
}

PosDefMatrix matrix_fixture(const std::string& path) {
  return PosDefMatrix{HermMatrix(cmat_from_json(load_json_file(path)))};
}

struct CommonFlags {
  std::uint64_t seed = 42;
  int trials = 1000;
  double rel_tol = 1e-8;
  double cond_cap = 100.0;
  int jobs = 1;
  std::vector<int> dims = {2, 3};
  std::string out_path;
  std::string format = "json";
};

void add_run_flags(CLI::App* sub, CommonFlags* fl) {
  sub->add_option("--seed", fl->seed, "base RNG seed");
  sub->add_option("--trials", fl->trials, "midpoint trials per grid point")
      ->check(CLI::PositiveNumber);
  sub->add_option("--dims", fl->dims, "matrix dimensions, comma separated")
      ->delimiter(',');
  sub->add_option("--tol", fl->rel_tol, "relative violation tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--cond-cap", fl->cond_cap,
                  "condition number cap for sampled matrices");
  sub->add_option("--jobs", fl->jobs, "worker threads for trials")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", fl->out_path, "write the report here");
  sub->add_option("--format", fl->format, "report format")
      ->check(CLI::IsMember({"json"}));
}

SuiteRunConfig to_config(const CommonFlags& fl) {
  SuiteRunConfig cfg;
  cfg.trials_per_point = fl.trials;
  cfg.rel_tol = fl.rel_tol;
  cfg.seed = fl.seed;
  cfg.cond_cap = fl.cond_cap;
  cfg.jobs = fl.jobs;
  return cfg;
}

json verify_one(const std::string& id, const CommonFlags& fl, bool* passed) {
  const SuiteSpec spec = build_suite(id, fl.dims);
  const SuiteRunConfig cfg = to_config(fl);
  const SuiteResult res = run_suite(spec, cfg);
  json rep = suite_report_json(res, cfg);
  rep["dims"] = fl.dims;
  *passed = res.passed;
  return rep;
}

// Directed falsification just past the concavity edge: p = q = 1, where the
// proven region ends at s = 1/2.
int run_boundary(const CommonFlags& fl, bool trials_given) {
  const int trials = trials_given ? fl.trials : 10000;
  const int dim = fl.dims.at(0);
  json rep;
  rep["command"] = "falsify_boundary";
  rep["p"] = 1.0;
  rep["q"] = 1.0;
  rep["dim"] = dim;
  rep["seed"] = fl.seed;
  rep["trials"] = trials;
  rep["rel_tol"] = fl.rel_tol;
  json arr = json::array();
  bool all_found = true;
  std::uint64_t k = 0;
  for (double s : {0.6, 0.8, 1.0}) {
    const FalsifyReport r =
        falsify_boundary(1.0, 1.0, s, dim, trials, fl.rel_tol,
                         derive_seed(fl.seed, k++));
    json e;
    e["s"] = s;
    e["found"] = r.found;
    e["trials_run"] = r.trials_run;
    e["runtime_ms"] = r.runtime_ms;
    if (r.found) {
      e["first_trial"] = r.first_trial;
      e["defect"] = r.defect;
      e["witness"] = r.witness;
    }
    arr.push_back(std::move(e));
    all_found = all_found && r.found;
  }
  rep["results"] = std::move(arr);
  rep["all_found"] = all_found;
  emit(fl.out_path, rep.dump(2));
  return all_found ? 0 : 1;
}

int run_verify(const std::string& target, const CommonFlags& fl,
               bool trials_given) {
  if (target == "boundary") return run_boundary(fl, trials_given);
  if (target == "all") {
    json rep;
    rep["command"] = "verify";
    rep["dims"] = fl.dims;
    json arr = json::array();
    bool all_passed = true;
    for (const std::string& id : suite_ids()) {
      bool passed = false;
      arr.push_back(verify_one(id, fl, &passed));
      all_passed = all_passed && passed;
    }
    rep["suites"] = std::move(arr);
    rep["passed"] = all_passed;
    emit(fl.out_path, rep.dump(2));
    return all_passed ? 0 : 1;
  }
  bool passed = false;
  const json rep = verify_one(target, fl, &passed);
  emit(fl.out_path, rep.dump(2));
  return passed ? 0 : 1;
}

int run_conjugate(const std::string& fn_arg, const std::string& direction,
                  const std::vector<double>& grid, const std::string& out_path,
                  const std::string& format) {
  if (grid.size() != 3)
    throw ConfigError("conjugate: --grid expects lo,hi,n");
  const double lo = grid[0];
  const double hi = grid[1];
  const int n = static_cast<int>(grid[2]);
  if (!(lo > 0.0) || !(hi >= lo) || n < 1 ||
      static_cast<double>(n) != grid[2])
    throw ConfigError("conjugate: --grid needs 0 < lo <= hi and integer n >= 1");

  const ScalarFn f = make_from_descriptor(fn_from_json(descriptor_arg(fn_arg)));
  const SearchConfig cfg;
  std::vector<double> ts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    ts[static_cast<size_t>(i)] =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);

  if (format == "json") {
    json arr = json::array();
    for (double t : ts) {
      const double v = direction == "hat" ? hat_transform(f, t, cfg)
                                          : check_transform(f, t, cfg);
      arr.push_back(json{{"t", t}, {"value", v}});
    }
    emit(out_path, arr.dump(2));
    return 0;
  }
  std::string csv = "t,value";
  for (double t : ts) {
    const double v = direction == "hat" ? hat_transform(f, t, cfg)
                                        : check_transform(f, t, cfg);
    csv += "\n" + shortest(t) + "," + shortest(v);
  }
  emit(out_path, csv);
  return 0;
}

// Accepts either a full problem object {"functional","phi","psi"} or the flat
// shape {"f","phi","psi","p","q"} for a plain trace functional.
ProblemSpec problem_fixture(const json& j) {
  if (!j.is_object()) throw ConfigError("eval: spec must be a JSON object");
  if (j.contains("functional")) return problem_from_json(j);
  if (!j.contains("f") || !j.contains("phi") || !j.contains("psi"))
    throw ConfigError("eval: spec needs 'functional' or 'f'/'phi'/'psi'");
  FunctionalSpec fnl;
  fnl.form = "lieb_trace";
  fnl.f = make_from_descriptor(fn_from_json(j.at("f")));
  fnl.p = j.value("p", 1.0);
  fnl.q = j.value("q", 1.0);
  return ProblemSpec{std::move(fnl), map_from_json(j.at("phi")),
                     map_from_json(j.at("psi"))};
}

int run_eval(const std::string& spec_path, const std::string& a_path,
             const std::string& b_path, const std::string& out_path) {
  const ProblemSpec prob =
      problem_fixture(load_json_file(resolve_fixture(spec_path)));
  if (prob.fnl.p == 0.0 && prob.fnl.q == 0.0)
    throw ConfigError("eval: (p,q) != (0,0) is required");
  const PosDefMatrix a = matrix_fixture(resolve_fixture(a_path));
  const PosDefMatrix b =
      b_path.empty() ? a : matrix_fixture(resolve_fixture(b_path));
  const double v = eval_functional(prob.fnl, prob.phi, prob.psi, a, b);
  json rep;
  rep["form"] = prob.fnl.form;
  rep["p"] = prob.fnl.p;
  rep["q"] = prob.fnl.q;
  rep["arity"] = prob.fnl.arity;
  rep["dim"] = a.dim();
  rep["value"] = v;
  emit(out_path, rep.dump(2));
  return 0;
}

int run_counterexample(const std::string& which, double t, double p, double s,
                       const std::string& out_path, const std::string& format) {
  if (which != "remark4.6" && which != "remark_4_6")
    throw ConfigError("counterexample: unknown target '" + which + "'");
  const CounterexampleReport rep = remark_4_6(t, p, s);
  const bool violated = rep.lhs_closed > rep.rhs_closed;
  if (format == "json") {
    json j;
    j["t"] = t;
    j["p"] = p;
    j["s"] = s;
    j["lhs_closed"] = rep.lhs_closed;
    j["rhs_closed"] = rep.rhs_closed;
    j["lhs_matrix"] = rep.lhs_matrix;
    j["rhs_matrix"] = rep.rhs_matrix;
    j["convexity_violated"] = violated;
    emit(out_path, j.dump(2));
  } else {
    emit(out_path, "lhs=" + shortest(rep.lhs_closed) +
                       " rhs=" + shortest(rep.rhs_closed) +
                       (violated ? " VIOLATED" : " not violated"));
  }
  return violated ? 0 : 1;
}

int run_sweep(const std::string& which, const CommonFlags& fl,
              bool trials_given) {
  if (which != "missing-region" && which != "missing_region")
    throw ConfigError("sweep: unknown target '" + which + "'");
  const int trials = trials_given ? fl.trials : 200;
  std::cerr << "NO CLAIM: exploratory sweep of open exponent cells; "
               "nothing is asserted in either direction.\n";
  const json rep =
      missing_region_sweep(fl.dims.at(0), trials, fl.rel_tol, fl.seed);
  emit(fl.out_path, rep.dump(2));
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"trace and norm functional laboratory"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand(
      "verify", "run a theorem suite, 'boundary', or 'all'");
  std::string verify_target;
  verify->add_option("target", verify_target, "suite id, 'boundary' or 'all'")
      ->required();
  CommonFlags verify_fl;
  add_run_flags(verify, &verify_fl);

  auto* conj = app.add_subcommand("conjugate", "tabulate hat/check transforms");
  std::string fn_arg, conj_dir, conj_out;
  std::string conj_format = "csv";
  std::vector<double> grid;
  conj->add_option("--fn", fn_arg, "function descriptor (inline JSON or path)")
      ->required();
  conj->add_option("--direction", conj_dir, "hat or check")
      ->required()
      ->check(CLI::IsMember({"hat", "check"}));
  conj->add_option("--grid", grid, "lo,hi,n")->required()->delimiter(',');
  conj->add_option("--out", conj_out, "write the table here");
  conj->add_option("--format", conj_format, "table format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* eval = app.add_subcommand("eval", "evaluate one functional");
  std::string spec_path, a_path, b_path, eval_out;
  eval->add_option("--spec", spec_path, "problem JSON")->required();
  eval->add_option("--A", a_path, "first input matrix JSON")->required();
  eval->add_option("--B", b_path, "second input matrix JSON");
  eval->add_option("--out", eval_out, "write the result here");

  auto* cex = app.add_subcommand("counterexample",
                                 "reproduce a closed-form counterexample");
  std::string cex_which, cex_out;
  std::string cex_format = "text";
  double cex_t = 4.0, cex_p = 1.0, cex_s = 1.0;
  cex->add_option("target", cex_which, "remark4.6")->required();
  cex->add_option("--t", cex_t, "diagonal entry t > 0");
  cex->add_option("--p", cex_p, "inner exponent");
  cex->add_option("--s", cex_s, "outer exponent");
  cex->add_option("--out", cex_out, "write the result here");
  cex->add_option("--format", cex_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* sweep = app.add_subcommand("sweep", "exploratory sweeps (no claims)");
  std::string sweep_which;
  sweep->add_option("target", sweep_which, "missing-region")->required();
  CommonFlags sweep_fl;
  add_run_flags(sweep, &sweep_fl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (verify->parsed())
    return run_verify(verify_target, verify_fl,
                      verify->count("--trials") > 0);
  if (conj->parsed())
    return run_conjugate(fn_arg, conj_dir, grid, conj_out, conj_format);
  if (eval->parsed()) return run_eval(spec_path, a_path, b_path, eval_out);
  if (cex->parsed())
    return run_counterexample(cex_which, cex_t, cex_p, cex_s, cex_out,
                              cex_format);
  if (sweep->parsed())
    return run_sweep(sweep_which, sweep_fl, sweep->count("--trials") > 0);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
