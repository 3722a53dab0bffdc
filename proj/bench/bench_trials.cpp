#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "lieblab/verifier.hpp"

using namespace lieblab;

// Times the parallel midpoint driver against the serial reference on one
// heavyish trial spec and checks that every lane count reproduces the serial
// report exactly.
int main(int argc, char** argv) {
  const int trials = argc > 1 ? std::atoi(argv[1]) : 1500;
  const int dim = argc > 2 ? std::atoi(argv[2]) : 5;

  MidpointTrial t;
  t.fnl.form = "lieb_trace";
  t.fnl.f = make_power(0.5);
  t.fnl.p = 0.5;
  t.fnl.q = 0.5;
  t.maps = MapsMode::random_kraus;
  t.dim = dim;
  t.kraus_rank = 2;
  t.direction = Direction::concave;

  using clock = std::chrono::steady_clock;
  const auto time_run = [&](auto&& fn) {
    const auto t0 = clock::now();
    ConcavityReport rep = fn();
    const double ms =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    return std::pair<ConcavityReport, double>(std::move(rep), ms);
  };

  const auto [base, serial_ms] =
      time_run([&] { return run_midpoint_serial(t, trials, 1e-8, 42); });
  std::printf("trials=%d dim=%d\n", trials, dim);
  std::printf("%-10s %10.1f ms   violations=%d worst_gap=%.6g\n", "serial",
              serial_ms, base.violations, base.worst_gap);

  bool ok = true;
  for (int jobs : {1, 2, 4, 8}) {
    const auto [rep, ms] =
        time_run([&] { return run_midpoint(t, trials, 1e-8, 42, jobs); });
    const bool same = rep.violations == base.violations &&
                      rep.worst_gap == base.worst_gap &&
                      rep.worst_witness == base.worst_witness;
    ok = ok && same;
    std::printf("jobs=%-5d %10.1f ms   speedup=%.2fx   %s\n", jobs, ms,
                serial_ms / ms, same ? "matches serial" : "MISMATCH");
  }
  if (!ok) {
    std::fprintf(stderr, "parallel reports diverged from the serial driver\n");
    return 1;
  }
  return 0;
}
