#pragma once

#include <cmath>
#include <cstdint>

#include "curvlab/core.hpp"
#include "curvlab/models.hpp"

// Deterministic sampling helpers. Everything is reproducible from (seed, n):
// sweeps use splitmix64, point grids use a Kronecker (additive irrational)
// sequence, and tangent directions come from the Hopf parametrization of the
// unit sphere. No global state.

namespace curvlab {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

namespace detail {

// Fractional parts of sqrt(2), sqrt(3), sqrt(5), sqrt(7): a badly
// approximable direction for the 4-torus rotation.
inline constexpr double kKronecker[4] = {0.41421356237309515,
                                         0.7320508075688772,
                                         0.23606797749978969,
                                         0.6457513110645906};

inline double frac(double t) { return t - std::floor(t); }

}  // namespace detail

// n-th point of the low-discrepancy sequence in the model box, inset from the
// boundary so chart-edge degeneracies are never sampled.
inline Vec4d kronecker_point(const ModelInfo& info, int n, double inset = 0.05) {
  Vec4d x;
  for (int i = 0; i < 4; ++i) {
    const double t = detail::frac(0.5 + (n + 1) * detail::kKronecker[i]);
    x[i] = info.lo[i] + (inset + t * (1 - 2 * inset)) * (info.hi[i] - info.lo[i]);
  }
  return x;
}

// Unit tangent direction from Hopf coordinates; (u1, u2, u3) in [0,1)^3
// uniform gives the round measure on the 3-sphere.
inline Vec4d hopf_direction(double u1, double u2, double u3) {
  const double eta = std::asin(std::sqrt(u1));
  const double p1 = 2 * kPi * u2, p2 = 2 * kPi * u3;
  const double c = std::cos(eta), s = std::sin(eta);
  return {c * std::cos(p1), c * std::sin(p1), s * std::cos(p2), s * std::sin(p2)};
}

// Deterministic direction scan: n-th entry of a fixed well-spread set.
inline Vec4d direction_sample(int n) {
  const double u1 = detail::frac(0.5 + (n + 1) * detail::kKronecker[0]);
  const double u2 = detail::frac((n + 1) * detail::kKronecker[1]);
  const double u3 = detail::frac((n + 1) * detail::kKronecker[2]);
  return hopf_direction(u1, u2, u3);
}

}  // namespace curvlab
