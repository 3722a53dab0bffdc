#pragma once
#include <string>
#include <vector>

#include "lieblab/matrix.hpp"
#include "lieblab/norms.hpp"
#include "lieblab/operator_mean.hpp"
#include "lieblab/scalar_fn.hpp"

namespace lieblab {

// Positive linear map in Kraus form, Phi(X) = sum_i K_i X K_i^*. All Kraus
// operators are out_dim x in_dim. A strict map satisfies Phi(I) > 0, which is
// exactly the condition for Phi to carry positive definite matrices to
// positive definite matrices; construction with require_strict set verifies
// it. Compression maps (a single wide Kraus operator) are the standard
// non-strict example and get their own factory.
class PosLinMap {
 public:
  explicit PosLinMap(std::vector<CMat> kraus, bool require_strict = true);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool strict() const { return strict_; }
  const std::vector<CMat>& kraus() const { return kraus_; }

  CMat apply(const CMat& x) const;
  HermMatrix apply(const HermMatrix& x) const;
  // Requires a strict map; the image of a positive definite matrix is then
  // positive definite.
  PosDefMatrix apply_pd(const PosDefMatrix& x) const;

  CMat image_of_identity() const;
  bool is_unital(double tol = 1e-10) const;

  static PosLinMap identity(int dim);
  static PosLinMap congruence(const CMat& c);
  static PosLinMap compression(const CMat& k);  // non-strict allowed

 private:
  std::vector<CMat> kraus_;
  int in_dim_ = 0;
  int out_dim_ = 0;
  bool strict_ = false;
};

// Rescale Phi to the unital map X -> S^{-1/2} Phi(X) S^{-1/2}, S = Phi(I).
PosLinMap make_unital(const PosLinMap& m);

// Random strict map with `rank` Gaussian Kraus operators, normalized so that
// Tr Phi(I) = out_dim. Resamples (up to a fixed attempt budget) when Phi(I)
// comes out nearly singular.
PosLinMap random_kraus_map(int in_dim, int out_dim, int rank,
                           RandomSource& rng);

// Random congruence X -> C X C^* with C = W^{1/2} U, W a conditioned random
// positive definite matrix and U Haar-ish unitary, so C is never close to
// singular.
PosLinMap random_congruence_map(int dim, RandomSource& rng);

// Tr f(Phi(A^p)^{1/2} Psi(B^q) Phi(A^p)^{1/2}). Requires matching output
// dimensions and (p, q) != (0, 0).
double lieb_trace(const ScalarFn& f, const PosLinMap& phi,
                  const PosLinMap& psi, double p, double q,
                  const PosDefMatrix& a, const PosDefMatrix& b);

// Tr f(exp(alpha Phi(log A) + (1 - alpha) Psi(log B))) for unital maps and
// alpha in [0, 1].
double log_limit_trace(const ScalarFn& f, const PosLinMap& phi,
                       const PosLinMap& psi, double alpha,
                       const PosDefMatrix& a, const PosDefMatrix& b);

// The three functional forms the verifier exercises. arity == 1 collapses the
// second slot onto the first (B = A, Psi = Phi) at evaluation time.
//   lieb_trace   Tr f(Phi(A^p)^{1/2} Psi(B^q) Phi(A^p)^{1/2})
//   mean_trace   Tr f(Phi(A^p) sigma Psi(B^q))
//   mean_norm    || f(Phi(A^p) sigma Psi(B^q)) ||  for the configured norm
struct FunctionalSpec {
  std::string form = "lieb_trace";
  ScalarFn f;
  double p = 1.0;
  double q = 1.0;
  int arity = 2;
  bool has_mean = false;
  OperatorMean mean;
  bool has_norm = false;
  NormSpec norm;
};

double eval_functional(const FunctionalSpec& fnl, const PosLinMap& phi,
                       const PosLinMap& psi, const PosDefMatrix& a,
                       const PosDefMatrix& b);

// A functional together with fixed maps: the payload of the CLI `eval`
// command.
struct ProblemSpec {
  FunctionalSpec fnl;
  PosLinMap phi;
  PosLinMap psi;
};

// Matrix line A(x) = A0 + x H, guaranteed positive definite on [0, x_max] by
// the construction-time requirement lambda_min(A0) > x_max * ||H||.
class LineSegment {
 public:
  LineSegment(PosDefMatrix a0, HermMatrix h, double x_max);
  PosDefMatrix at(double x) const;  // throws InvalidInput outside [0, x_max]
  double x_max() const { return x_max_; }

 private:
  PosDefMatrix a0_;
  HermMatrix h_;
  double x_max_;
};

// Concavity probe along matrix lines: with
//   g(x) = Tr (I + M(x)^{-1/(p+q)})^{-1},
//   M(x) = Phi(A(x)^p)^{1/2} Psi(B(x)^q) Phi(A(x)^p)^{1/2},
// g is concave for 0 <= p, q with 0 < p + q <= 1, so the reported second
// derivative should never be meaningfully positive. The derivative is a
// Richardson-extrapolated central difference, (4 D(h) - D(2h)) / 3 with
// D(s) = (g(x+s) - 2 g(x) + g(x-s)) / s^2.
struct EpsteinProbe {
  double value;
  double second_derivative;
};
EpsteinProbe epstein_probe(double p, double q, const PosLinMap& phi,
                           const PosLinMap& psi, const LineSegment& sa,
                           const LineSegment& sb, double x, double h = 1e-3);

// Variational bracket for the trace functional. With S = Phi(A^p)^{1/2},
// N = Psi(B^q), M = S N S and a trial matrix X > 0,
//   value(X) = Tr(X N X) - Tr fconj(X Phi(A^p)^{-1} X).
// For f non-decreasing concave and fconj its concave conjugate, Tr f(M) is
// the infimum of value(X); for f non-decreasing convex and fconj its convex
// conjugate, the supremum. Both are attained at
//   X^* = (S f'(M) S)^{1/2},
// which is evaluated alongside `candidates` random trial points.
struct VariationalReport {
  double target;        // Tr f(M)
  double at_optimizer;  // value(X^*)
  double best;          // extremal value over all trial points and X^*
};

VariationalReport variational_inf(const ScalarFn& f, const ScalarFn& fcheck,
                                  const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b, int candidates,
                                  RandomSource& rng);

VariationalReport variational_sup(const ScalarFn& f, const ScalarFn& fhat,
                                  const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b, int candidates,
                                  RandomSource& rng);

}  // namespace lieblab
