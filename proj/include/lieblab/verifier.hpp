#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "lieblab/json_io.hpp"
#include "lieblab/lieb.hpp"

namespace lieblab {

enum class Direction { concave, convex };

// How the maps of a trial are drawn. Both slots are redrawn independently
// every trial; `identity` fixes both to the identity map, `congruence_id`
// draws a congruence for the first slot and fixes the second slot to the
// identity, and the `*_identity` modes fix the named slot only.
enum class MapsMode { identity, random_kraus, congruence, congruence_id,
                      phi_identity, psi_identity };

std::string maps_mode_name(MapsMode m);

// One midpoint-concavity experiment: a functional, a sampling recipe, and the
// expected direction. Each trial draws maps and two input pairs, evaluates
// the functional at both pairs and at their midpoint, and flags a violation
// when the defect
//   concave:  g(mid) - (g1 + g2)/2
//   convex:   (g1 + g2)/2 - g(mid)
// falls below -rel_tol * (1 + |g1| + |g2|). Sampling order inside a trial is
// fixed (phi, psi, A1, B1, A2, B2) and each trial runs on its own RNG stream
// derived from (seed, trial index), so results are independent of thread
// count and identical between the parallel and serial drivers.
struct MidpointTrial {
  FunctionalSpec fnl;
  MapsMode maps = MapsMode::random_kraus;
  int dim = 2;
  int kraus_rank = 1;
  double cond_cap = 100.0;
  Direction direction = Direction::concave;
};

struct ConcavityReport {
  int trials_run = 0;
  int violations = 0;
  double worst_gap = 0.0;  // most negative normalized defect seen
  json worst_witness;      // null unless violations > 0
  double runtime_ms = 0.0;
};

ConcavityReport run_midpoint(const MidpointTrial& t, int trials,
                             double rel_tol, std::uint64_t seed, int jobs);
ConcavityReport run_midpoint_serial(const MidpointTrial& t, int trials,
                                    double rel_tol, std::uint64_t seed);

// Standalone re-evaluation of a violation witness: reconstructs the
// functional, maps, and inputs from the witness JSON and recomputes the three
// functional values and the normalized defect.
struct WitnessCheck {
  double g1 = 0.0;
  double g2 = 0.0;
  double gmid = 0.0;
  double normalized_defect = 0.0;
};
WitnessCheck reevaluate_witness(const json& witness);

// Directed search for concavity failures of Tr (Phi(A^p)^{1/2} Psi(B^q)
// Phi(A^p)^{1/2})^s outside the proven region. Requires p, q > 0 and
// s >= 1/(p+q); maps are fresh random congruences each trial. Scans trials in
// order and stops at the first violation.
struct FalsifyReport {
  int trials_run = 0;
  bool found = false;
  int first_trial = -1;
  double defect = 0.0;  // normalized defect at the hit
  json witness;
  double runtime_ms = 0.0;
};
FalsifyReport falsify_boundary(double p, double q, double s, int dim,
                               int trials, double rel_tol, std::uint64_t seed);

// The explicit compression counterexample: with v = (1, 1)/sqrt(2),
// K = v^*, A = diag(1, t),
//   lhs = Tr (K A K^*)^s           = ((1 + t)/2)^s
//   rhs = Tr (K A^{-p} K^*)^{-s/p} = ((1 + t^{-p})/2)^{-s/p}.
// Both are returned in closed form and from the matrix pipeline.
struct CounterexampleReport {
  double lhs_closed = 0.0;
  double rhs_closed = 0.0;
  double lhs_matrix = 0.0;
  double rhs_matrix = 0.0;
};
CounterexampleReport remark_4_6(double t, double p, double s);

// Partial-sum comparisons of sorted spectra. Both vectors must share one
// length and, for the supermajorization check, be entrywise nonnegative.
//   weakly_majorized(u, v):       sum of k largest of u <= same of v + tol
//   weakly_supermajorized(u, v):  sum of k smallest of u >= same of v - tol
bool weakly_majorized(std::vector<double> u, std::vector<double> v,
                      double tol = 0.0);
bool weakly_supermajorized(std::vector<double> u, std::vector<double> v,
                           double tol = 0.0);

// Eigenvalues (ascending) of Phi(A^p)^{1/2} Psi(B^q) Phi(A^p)^{1/2}.
std::vector<double> lieb_spectrum(const PosLinMap& phi, const PosLinMap& psi,
                                  double p, double q, const PosDefMatrix& a,
                                  const PosDefMatrix& b);

// Eigenvalues (ascending) of (Phi(A^p) sigma Psi(B^q))^{1/gamma}.
std::vector<double> mean_root_spectrum(const OperatorMean& sigma,
                                       const PosLinMap& phi,
                                       const PosLinMap& psi, double p, double q,
                                       double gamma, const PosDefMatrix& a,
                                       const PosDefMatrix& b);

// Spectral passage check on F(A,B) = (Phi(A^p) sigma Psi(B^q))^{1/gamma},
// gamma = max{p,q} for 0 <= p,q <= 1 and min{p,q} for -1 <= p,q <= 0. For
// each sample it compares the doubled midpoint spectrum u of F (convex: of
// F^{-1}) against the concatenated endpoint spectra v:
//   concave: if u supermajorizes v (premise), then
//            2 Tr f(Fmid) >= Tr f(F1) + Tr f(F2) must hold (tol 1e-8) for
//            every non-decreasing concave f in the battery;
//   convex:  if u is weakly majorized by v, the reversed inequality must
//            hold for every non-decreasing convex f in the battery.
// Samples are drawn like run_midpoint trials at the given exponents, cycling
// sigma through the arithmetic, geometric and harmonic means.
struct PassageReport {
  int samples = 0;
  int premise_held = 0;
  int conclusion_checks = 0;
  int conclusion_failures = 0;
  double worst_defect = 0.0;
};
PassageReport passage_check(Direction dir, double p, double q, int dim,
                            int samples, std::uint64_t seed);

// Exploratory sweep over exponent cells carrying no claim in either
// direction. Reports, per cell, the observed fraction of concavity and
// convexity defects; it asserts nothing and is for orientation only.
json missing_region_sweep(int dim, int trials_per_cell, double rel_tol,
                          std::uint64_t seed);

}  // namespace lieblab
