// Reproducible random streams. A stream is addressed by (seed, stream_id);
// the pair is mixed through one splitmix64 round into the mt19937_64 seed,
// so consecutive stream ids give decorrelated generators and any worker
// partition of stream ids reproduces the single-threaded results.
//
// Doubles come from the top 53 bits of the engine output; Gaussians from
// Box-Muller. mt19937_64's sequence is pinned by the standard, so a given
// (seed, stream_id) yields identical draws on every platform.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace complab {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(splitmix64(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1))) {}
  explicit Rng(const RngSpec& spec) : Rng(spec.seed, spec.stream_id) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(t);
    has_cached_ = true;
    return r * std::cos(t);
  }

  // Standard complex normal, E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace complab
