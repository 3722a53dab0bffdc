#include "lieblab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace lieblab {

namespace {

const char* kKnownKinds[] = {"trace_norm",  "operator_norm", "schatten",
                             "ky_fan_norm", "ky_fan_anti",   "derived_anti"};

void check_kind(const std::string& kind) {
  for (const char* k : kKnownKinds)
    if (kind == k) return;
  throw InvalidInput("norm: unknown kind '" + kind + "'");
}

// Norm kinds on a plain eigenvalue list (absolute values, no PSD handling).
double norm_from_spectrum(const NormSpec& s, std::vector<double> vals) {
  for (double& v : vals) v = std::abs(v);
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  if (s.kind == "trace_norm") {
    double acc = 0.0;
    for (double v : vals) acc += v;
    return acc;
  }
  if (s.kind == "operator_norm") return vals.empty() ? 0.0 : vals.front();
  if (s.kind == "schatten") {
    double acc = 0.0;
    for (double v : vals) acc += std::pow(v, s.p);
    return std::pow(acc, 1.0 / s.p);
  }
  if (s.kind == "ky_fan_norm") {
    if (s.k < 1 || s.k > static_cast<int>(vals.size())) {
      std::ostringstream os;
      os << "ky_fan_norm: k=" << s.k << " out of range for dim "
         << vals.size();
      throw InvalidInput(os.str());
    }
    double acc = 0.0;
    for (int i = 0; i < s.k; ++i) acc += vals[static_cast<size_t>(i)];
    return acc;
  }
  throw InvalidInput("norm_from_spectrum: '" + s.kind + "' is not a norm kind");
}

std::vector<double> psd_clipped(const NormSpec& s, const HermMatrix& h) {
  std::vector<double> vals = eig_herm(h).eigenvalues;
  for (double& v : vals) {
    if (v < -1e-10) {
      std::ostringstream os;
      os << norm_label(s) << ": input has eigenvalue " << v
         << "; anti kinds require positive semidefinite input";
      throw InvalidInput(os.str());
    }
    if (v < 0.0) v = 0.0;
  }
  return vals;
}

}  // namespace

NormSpec trace_norm() { return {"trace_norm", 1, 1.0, 1.0, nullptr}; }
NormSpec operator_norm() { return {"operator_norm", 1, 1.0, 1.0, nullptr}; }

NormSpec schatten_norm(double p) {
  if (!(p >= 1.0)) throw InvalidInput("schatten_norm: requires p >= 1");
  return {"schatten", 1, p, 1.0, nullptr};
}

NormSpec ky_fan_norm(int k) {
  if (k < 1) throw InvalidInput("ky_fan_norm: requires k >= 1");
  return {"ky_fan_norm", k, 1.0, 1.0, nullptr};
}

NormSpec ky_fan_anti(int k) {
  if (k < 1) throw InvalidInput("ky_fan_anti: requires k >= 1");
  return {"ky_fan_anti", k, 1.0, 1.0, nullptr};
}

NormSpec derived_anti(const NormSpec& base, double alpha) {
  check_kind(base.kind);
  if (is_anti_kind(base))
    throw InvalidInput("derived_anti: base must be a norm kind, got '" +
                       base.kind + "'");
  if (!(alpha > 0.0)) throw InvalidInput("derived_anti: requires alpha > 0");
  NormSpec s;
  s.kind = "derived_anti";
  s.alpha = alpha;
  s.base = std::make_shared<const NormSpec>(base);
  return s;
}

bool is_anti_kind(const NormSpec& s) {
  return s.kind == "ky_fan_anti" || s.kind == "derived_anti";
}

std::string norm_label(const NormSpec& s) {
  std::ostringstream os;
  if (s.kind == "schatten")
    os << "schatten(" << s.p << ")";
  else if (s.kind == "ky_fan_norm" || s.kind == "ky_fan_anti")
    os << s.kind << "(" << s.k << ")";
  else if (s.kind == "derived_anti")
    os << "derived_anti(" << (s.base ? norm_label(*s.base) : "?") << ","
       << s.alpha << ")";
  else
    os << s.kind;
  return os.str();
}

double eval_norm(const NormSpec& s, const HermMatrix& h) {
  check_kind(s.kind);
  if (s.kind == "ky_fan_anti") {
    std::vector<double> vals = psd_clipped(s, h);  // ascending
    if (s.k < 1 || s.k > static_cast<int>(vals.size())) {
      std::ostringstream os;
      os << "ky_fan_anti: k=" << s.k << " out of range for dim "
         << vals.size();
      throw InvalidInput(os.str());
    }
    double acc = 0.0;
    for (int i = 0; i < s.k; ++i) acc += vals[static_cast<size_t>(i)];
    return acc;
  }
  if (s.kind == "derived_anti") {
    if (!s.base) throw InvalidInput("derived_anti: missing base norm");
    const std::vector<double> vals = psd_clipped(s, h);
    std::vector<double> inv;
    inv.reserve(vals.size());
    for (double v : vals) {
      if (v == 0.0) return 0.0;
      inv.push_back(std::pow(v, -s.alpha));
    }
    const double b = norm_from_spectrum(*s.base, std::move(inv));
    return std::pow(b, -1.0 / s.alpha);
  }
  return norm_from_spectrum(s, eig_herm(h).eigenvalues);
}

}  // namespace lieblab
