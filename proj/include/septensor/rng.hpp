#pragma once

#include <cmath>
#include <cstdint>

namespace septensor {

// Counter-based pseudo-random generator built on splitmix64.
//
// Results are bit-identical for a given seed on any platform, which the
// standard <random> distributions do not guarantee. Independent streams are
// derived from (seed, stream) so that parallel generation of, e.g., the l-th
// random tensor does not depend on how many draws other streams consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derive an independent stream, e.g. one per random tensor index.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL + stream_id * 0xbf58476d1ce4e5b9ULL));
    r.next();  // decorrelate nearby stream ids
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0,1); never returns 0 or 1 exactly.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on (-a, a).
  double uniform(double a) { return a * (2.0 * uniform01() - 1.0); }

  // Standard normal via Box-Muller (deterministic, no cached state).
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Rademacher +-1.
  double bernoulli() { return (next() & 1) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace septensor
