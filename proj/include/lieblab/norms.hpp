#pragma once
#include <memory>
#include <string>

#include "lieblab/matrix.hpp"

namespace lieblab {

// Unitarily invariant norms and anti-norms on Hermitian matrices, evaluated
// through the spectrum.
//
//   trace_norm     sum |lambda_i|
//   operator_norm  max |lambda_i|
//   schatten       (sum |lambda_i|^p)^{1/p},  p >= 1
//   ky_fan_norm    sum of the k largest |lambda_i|
//   ky_fan_anti    sum of the k smallest eigenvalues (PSD input only)
//   derived_anti   ||A||_! = ||A^{-alpha}||_base^{-1/alpha}, alpha > 0, with
//                  value 0 on singular PSD input; base must be a norm kind
//
// Anti kinds accept only positive semidefinite input: eigenvalues below
// -1e-10 raise InvalidInput, small negatives are clipped to 0.
struct NormSpec {
  std::string kind;
  int k = 1;
  double p = 1.0;
  double alpha = 1.0;
  std::shared_ptr<const NormSpec> base;
};

NormSpec trace_norm();
NormSpec operator_norm();
NormSpec schatten_norm(double p);
NormSpec ky_fan_norm(int k);
NormSpec ky_fan_anti(int k);
NormSpec derived_anti(const NormSpec& base, double alpha);

bool is_anti_kind(const NormSpec& s);
std::string norm_label(const NormSpec& s);

// Throws InvalidInput on unknown kind, k out of range for the matrix, or
// non-PSD input to an anti kind.
double eval_norm(const NormSpec& s, const HermMatrix& h);

}  // namespace lieblab
