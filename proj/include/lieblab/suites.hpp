#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "lieblab/verifier.hpp"

namespace lieblab {

// One grid point of a theorem suite: the functional under test, how maps are
// drawn, the dimension, and the direction the theorem predicts. `params`
// records the grid coordinates for reports.
struct SuitePoint {
  std::string label;
  json params;
  FunctionalSpec fnl;
  MapsMode maps = MapsMode::random_kraus;
  int dim = 2;
  int kraus_rank = 2;
  Direction expected = Direction::concave;
};

struct SuiteSpec {
  std::string theorem_id;
  std::vector<SuitePoint> points;
};

// Suite identifiers accepted by build_suite, in canonical order.
const std::vector<std::string>& suite_ids();

// Checks one grid point against the hypothesis box of the named suite and
// throws ConfigError naming the point when it falls outside. Only conditions
// that can be certified from the function descriptor are accepted; a grid
// point whose function cannot be certified is rejected even if it happens to
// satisfy the hypothesis.
void assert_hypothesis(const std::string& theorem_id, const SuitePoint& pt);

// Builds the grid for one suite over the given dimensions (used in the order
// given; groups that do not enumerate all dimensions cycle through the list).
// Every point is passed through assert_hypothesis before it is returned.
SuiteSpec build_suite(const std::string& theorem_id,
                      const std::vector<int>& dims);

struct SuiteRunConfig {
  int trials_per_point = 1000;
  double rel_tol = 1e-8;
  std::uint64_t seed = 42;
  double cond_cap = 100.0;
  int jobs = 1;
};

struct SuiteResult {
  SuiteSpec spec;
  std::vector<ConcavityReport> reports;  // one per point, same order
  bool passed = false;                   // every point ran with 0 violations
};

// Runs every point with run_midpoint. Point i uses derive_seed(config.seed,
// i), so a point's report depends only on the config and its position, not
// on sibling points.
SuiteResult run_suite(const SuiteSpec& suite, const SuiteRunConfig& config);

json suite_report_json(const SuiteResult& result,
                       const SuiteRunConfig& config);

}  // namespace lieblab
