#pragma once
#include <string>

#include "json.hpp"
#include "lieblab/lieb.hpp"

namespace lieblab {

using json = nlohmann::json;

// JSON schemas (object keys are emitted sorted, so dumps are canonical):
//   matrix      {"dim", "re", "im"}             nested row arrays
//   kraus op    {"rows", "cols", "re", "im"}
//   map         {"kraus": [...], "strict": bool}
//   function    {"kind": power|log|affine|pick|a4|compose_pow, ...params}
//   mean        {"kind": arithmetic|geometric|harmonic|power|pick|adjoint, ...}
//   norm        {"kind", ...params}
//   functional  {"form", "f", "p", "q", "arity"[, "mean"][, "norm"]}
//   problem     {"functional", "phi", "psi"}
// Deserializers throw ConfigError on malformed structure and propagate
// InvalidInput from the underlying constructors.

json to_json(const CMat& m);
CMat cmat_from_json(const json& j);
json kraus_to_json(const CMat& k);
CMat kraus_from_json(const json& j);

json to_json(const PosLinMap& m);
PosLinMap map_from_json(const json& j);

json to_json(const FnDescriptor& d);
FnDescriptor fn_from_json(const json& j);

json to_json(const OperatorMean& m);
OperatorMean mean_from_json(const json& j);

json to_json(const NormSpec& s);
NormSpec norm_from_json(const json& j);

json to_json(const FunctionalSpec& f);
FunctionalSpec functional_from_json(const json& j);

json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace lieblab
