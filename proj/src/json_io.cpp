#include "lieblab/json_io.hpp"

#include <fstream>

namespace lieblab {

namespace {

json complex_grid(const CMat& m, bool real) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(real ? m(i, j).real() : m(i, j).imag());
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat grid_to_cmat(const json& re, const json& im, int rows, int cols,
                  const char* what) {
  if (!re.is_array() || !im.is_array() ||
      static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows)
    throw ConfigError(std::string(what) + ": malformed 're'/'im' grids");
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& rr = re[static_cast<size_t>(i)];
    const json& ri = im[static_cast<size_t>(i)];
    if (!rr.is_array() || !ri.is_array() ||
        static_cast<int>(rr.size()) != cols ||
        static_cast<int>(ri.size()) != cols)
      throw ConfigError(std::string(what) + ": malformed 're'/'im' grids");
    for (int j = 0; j < cols; ++j)
      m(i, j) = cxd(rr[static_cast<size_t>(j)].get<double>(),
                    ri[static_cast<size_t>(j)].get<double>());
  }
  return m;
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

}  // namespace

json to_json(const CMat& m) {
  if (m.rows() != m.cols())
    throw InvalidInput("to_json(matrix): expected a square matrix");
  return json{{"dim", m.rows()},
              {"re", complex_grid(m, true)},
              {"im", complex_grid(m, false)}};
}

CMat cmat_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("matrix: expected an object");
  const int dim = need(j, "dim", "matrix").get<int>();
  if (dim < 1) throw ConfigError("matrix: dim must be >= 1");
  return grid_to_cmat(need(j, "re", "matrix"), need(j, "im", "matrix"), dim,
                      dim, "matrix");
}

json kraus_to_json(const CMat& k) {
  return json{{"rows", k.rows()},
              {"cols", k.cols()},
              {"re", complex_grid(k, true)},
              {"im", complex_grid(k, false)}};
}

CMat kraus_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("kraus: expected an object");
  const int rows = need(j, "rows", "kraus").get<int>();
  const int cols = need(j, "cols", "kraus").get<int>();
  if (rows < 1 || cols < 1) throw ConfigError("kraus: bad shape");
  return grid_to_cmat(need(j, "re", "kraus"), need(j, "im", "kraus"), rows,
                      cols, "kraus");
}

json to_json(const PosLinMap& m) {
  json ops = json::array();
  for (const CMat& k : m.kraus()) ops.push_back(kraus_to_json(k));
  return json{{"kraus", std::move(ops)}, {"strict", m.strict()}};
}

PosLinMap map_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("map: expected an object");
  const json& ops = need(j, "kraus", "map");
  if (!ops.is_array() || ops.empty())
    throw ConfigError("map: 'kraus' must be a non-empty array");
  std::vector<CMat> ks;
  ks.reserve(ops.size());
  for (const json& o : ops) ks.push_back(kraus_from_json(o));
  const bool strict = j.value("strict", true);
  return PosLinMap(std::move(ks), strict);
}

json to_json(const FnDescriptor& d) {
  if (std::holds_alternative<PowerParams>(d.node)) {
    return json{{"kind", "power"}, {"s", std::get<PowerParams>(d.node).s}};
  }
  if (std::holds_alternative<LogParams>(d.node)) return json{{"kind", "log"}};
  if (std::holds_alternative<AffineParams>(d.node)) {
    const auto& a = std::get<AffineParams>(d.node);
    return json{{"kind", "affine"}, {"a", a.a}, {"b", a.b}};
  }
  if (std::holds_alternative<PickParams>(d.node)) {
    const auto& p = std::get<PickParams>(d.node);
    json atoms = json::array();
    for (const PickAtom& a : p.atoms)
      atoms.push_back(json{{"lambda", a.lambda}, {"weight", a.weight}});
    return json{{"kind", "pick"},
                {"h1", p.h1},
                {"b", p.b},
                {"atoms", std::move(atoms)}};
  }
  if (std::holds_alternative<A4Params>(d.node)) {
    const auto& a = std::get<A4Params>(d.node);
    static const char* names[] = {"shifted_power", "power_shift",
                                  "two_piece_convex", "capped",
                                  "two_piece_concave"};
    return json{{"kind", "a4"},
                {"variant", names[static_cast<int>(a.variant)]},
                {"r", a.r},
                {"alpha", a.alpha},
                {"s", a.s},
                {"s1", a.s1},
                {"s2", a.s2},
                {"beta", a.beta}};
  }
  if (std::holds_alternative<ComposePowParams>(d.node)) {
    const auto& c = std::get<ComposePowParams>(d.node);
    if (!c.base) throw InvalidInput("to_json(function): compose has no base");
    return json{{"kind", "compose_pow"}, {"c", c.c}, {"base", to_json(*c.base)}};
  }
  throw InvalidInput("to_json(function): function is not serializable");
}

FnDescriptor fn_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("function: expected an object");
  const std::string kind = need(j, "kind", "function").get<std::string>();
  FnDescriptor d;
  if (kind == "power") {
    d.node = PowerParams{need(j, "s", "function").get<double>()};
  } else if (kind == "log") {
    d.node = LogParams{};
  } else if (kind == "affine") {
    d.node = AffineParams{need(j, "a", "function").get<double>(),
                          need(j, "b", "function").get<double>()};
  } else if (kind == "pick") {
    PickParams p;
    p.h1 = need(j, "h1", "function").get<double>();
    p.b = need(j, "b", "function").get<double>();
    for (const json& a : need(j, "atoms", "function"))
      p.atoms.push_back({need(a, "lambda", "pick atom").get<double>(),
                         need(a, "weight", "pick atom").get<double>()});
    d.node = std::move(p);
  } else if (kind == "a4") {
    A4Params p;
    const std::string v = need(j, "variant", "function").get<std::string>();
    if (v == "shifted_power")
      p.variant = A4Variant::shifted_power;
    else if (v == "power_shift")
      p.variant = A4Variant::power_shift;
    else if (v == "two_piece_convex")
      p.variant = A4Variant::two_piece_convex;
    else if (v == "capped")
      p.variant = A4Variant::capped;
    else if (v == "two_piece_concave")
      p.variant = A4Variant::two_piece_concave;
    else
      throw ConfigError("function: unknown a4 variant '" + v + "'");
    p.r = need(j, "r", "function").get<double>();
    p.alpha = need(j, "alpha", "function").get<double>();
    p.s = j.value("s", 0.5);
    p.s1 = j.value("s1", 0.5);
    p.s2 = j.value("s2", 0.5);
    p.beta = j.value("beta", 0.5);
    d.node = p;
  } else if (kind == "compose_pow") {
    const double c = need(j, "c", "function").get<double>();
    const FnDescriptor base = fn_from_json(need(j, "base", "function"));
    d = compose_pow_desc(c, base);
  } else {
    throw ConfigError("function: unknown kind '" + kind + "'");
  }
  return d;
}

json to_json(const OperatorMean& m) {
  if (m.kind == "adjoint") {
    if (!m.adjoint_base) throw InvalidInput("to_json(mean): adjoint has no base");
    return json{{"kind", "adjoint"}, {"base", to_json(*m.adjoint_base)}};
  }
  if (m.kind == "pick") {
    json atoms = json::array();
    for (const PickAtom& a : m.pick.atoms)
      atoms.push_back(json{{"lambda", a.lambda}, {"weight", a.weight}});
    return json{{"kind", "pick"},
                {"h1", m.pick.h1},
                {"b", m.pick.b},
                {"atoms", std::move(atoms)}};
  }
  if (m.kind == "power") return json{{"kind", "power"}, {"alpha", m.alpha}};
  return json{{"kind", m.kind}};
}

OperatorMean mean_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("mean: expected an object");
  const std::string kind = need(j, "kind", "mean").get<std::string>();
  if (kind == "arithmetic") return arithmetic_mean();
  if (kind == "geometric") return geometric_mean();
  if (kind == "harmonic") return harmonic_mean();
  if (kind == "power")
    return power_mean(need(j, "alpha", "mean").get<double>());
  if (kind == "pick") {
    PickParams p;
    p.h1 = need(j, "h1", "mean").get<double>();
    p.b = need(j, "b", "mean").get<double>();
    for (const json& a : need(j, "atoms", "mean"))
      p.atoms.push_back({need(a, "lambda", "pick atom").get<double>(),
                         need(a, "weight", "pick atom").get<double>()});
    return mean_from_pick(p);
  }
  if (kind == "adjoint")
    return adjoint_mean(mean_from_json(need(j, "base", "mean")));
  throw ConfigError("mean: unknown kind '" + kind + "'");
}

json to_json(const NormSpec& s) {
  if (s.kind == "schatten") return json{{"kind", s.kind}, {"p", s.p}};
  if (s.kind == "ky_fan_norm" || s.kind == "ky_fan_anti")
    return json{{"kind", s.kind}, {"k", s.k}};
  if (s.kind == "derived_anti") {
    if (!s.base) throw InvalidInput("to_json(norm): derived_anti has no base");
    return json{{"kind", s.kind}, {"alpha", s.alpha}, {"base", to_json(*s.base)}};
  }
  return json{{"kind", s.kind}};
}

NormSpec norm_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("norm: expected an object");
  const std::string kind = need(j, "kind", "norm").get<std::string>();
  if (kind == "trace_norm") return trace_norm();
  if (kind == "operator_norm") return operator_norm();
  if (kind == "schatten")
    return schatten_norm(need(j, "p", "norm").get<double>());
  if (kind == "ky_fan_norm")
    return ky_fan_norm(need(j, "k", "norm").get<int>());
  if (kind == "ky_fan_anti")
    return ky_fan_anti(need(j, "k", "norm").get<int>());
  if (kind == "derived_anti")
    return derived_anti(norm_from_json(need(j, "base", "norm")),
                        need(j, "alpha", "norm").get<double>());
  throw ConfigError("norm: unknown kind '" + kind + "'");
}

json to_json(const FunctionalSpec& f) {
  json j{{"form", f.form},
         {"f", to_json(f.f.desc)},
         {"p", f.p},
         {"q", f.q},
         {"arity", f.arity}};
  if (f.has_mean) j["mean"] = to_json(f.mean);
  if (f.has_norm) j["norm"] = to_json(f.norm);
  return j;
}

FunctionalSpec functional_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("functional: expected an object");
  FunctionalSpec f;
  f.form = need(j, "form", "functional").get<std::string>();
  f.f = make_from_descriptor(fn_from_json(need(j, "f", "functional")));
  f.p = need(j, "p", "functional").get<double>();
  f.q = need(j, "q", "functional").get<double>();
  f.arity = j.value("arity", 2);
  if (j.contains("mean")) {
    f.mean = mean_from_json(j["mean"]);
    f.has_mean = true;
  }
  if (j.contains("norm")) {
    f.norm = norm_from_json(j["norm"]);
    f.has_norm = true;
  }
  return f;
}

json to_json(const ProblemSpec& p) {
  return json{{"functional", to_json(p.fnl)},
              {"phi", to_json(p.phi)},
              {"psi", to_json(p.psi)}};
}

ProblemSpec problem_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("problem: expected an object");
  return ProblemSpec{functional_from_json(need(j, "functional", "problem")),
                     map_from_json(need(j, "phi", "problem")),
                     map_from_json(need(j, "psi", "problem"))};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in '" + path + "': " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace lieblab
