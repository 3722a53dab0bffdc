#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace lieblab {

// splitmix64 finalizer, used to derive independent stream seeds from
// (seed, index) pairs so parallel lanes are reproducible by construction.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x51ed2700f4a7c15ull));
}

// Deterministic random source. Gaussian variates are produced by Box-Muller
// on top of mt19937_64 output rather than std::normal_distribution, whose
// sequence is implementation defined; streams here are identical across
// platforms and standard libraries for a fixed seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  // uniform in (0, 1]
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // E|z|^2 = 1
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  static constexpr double kPi = 3.14159265358979323846;
  static constexpr double kInvSqrt2 = 0.70710678118654752440;
};

}  // namespace lieblab
