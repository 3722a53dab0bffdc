#pragma once
#include <memory>
#include <string>

#include "lieblab/matrix.hpp"
#include "lieblab/scalar_fn.hpp"

namespace lieblab {

// Operator mean identified by its representing function m, operator monotone
// on (0, inf) with m(1) = 1:
//   A sigma B = A^{1/2} m(A^{-1/2} B A^{-1/2}) A^{1/2}.
// Every constructor runs the sampled monotonicity/concavity screen on m; it
// cannot certify operator monotonicity, but rejects anything that visibly
// fails the necessary conditions.
struct OperatorMean {
  ScalarFn rep;
  std::string kind;    // arithmetic|geometric|harmonic|power|pick|adjoint
  double alpha = 0.0;  // parameter of the power family
  PickParams pick;     // parameters when kind == "pick"
  std::shared_ptr<const OperatorMean> adjoint_base;  // set when kind=="adjoint"
};

OperatorMean arithmetic_mean();
OperatorMean geometric_mean();
OperatorMean harmonic_mean();

// Binomial family, representing function ((1 + x^a)/2)^(1/a) for a in
// [-1, 1] \ {0} and x^{1/2} at a = 0. Endpoints recover the harmonic and
// arithmetic means. Throws InvalidInput outside [-1, 1].
OperatorMean power_mean(double a);

// Mean from a discretized Pick representation, normalized so m(1) = 1.
// Throws InvalidInput when the value at 1 is not positive.
OperatorMean mean_from_pick(const PickParams& p);

// Adjoint mean, representing function 1/m(1/x). Application is routed
// through the base mean on inverses, so the pair is consistent by
// construction rather than by a second formula.
OperatorMean adjoint_mean(const OperatorMean& m);

// A sigma B. Throws InvalidInput on dimension mismatch.
PosDefMatrix mean_apply(const OperatorMean& m, const PosDefMatrix& a,
                        const PosDefMatrix& b);

}  // namespace lieblab
