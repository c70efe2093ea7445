#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "curvlab/hsc.hpp"
#include "curvlab/models.hpp"

using namespace curvlab;

TEST_CASE("constant-sectional models scan flat") {
  for (const double k : {1.0, 4.0, -1.0, -4.0}) {
    const Model m = k > 0 ? make_cp2(k) : make_ball(k);
    const auto c = compute_curvature(m, {0.2, -0.15, 0.1, 0.3});
    const auto scan = hsc_scan(c, 48);
    CHECK(std::abs(scan.h_mean - k) < 1e-8 * std::abs(k));
    CHECK(scan.spread_rel < 1e-9 * std::max(1.0, std::abs(k)));
    CHECK(scan.route_mismatch < 1e-10 * std::max(1.0, std::abs(k)));
    CHECK(scan.imag_residual < 1e-10 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("nilmanifold sectional values and route agreement") {
  const auto c = compute_curvature(make_kt(), {0.5, 0.9, -0.2, 0.1});

  // Axis values derived from the invariant curvature matrix.
  CHECK(std::abs(hsc_real(c.r_h, {1, 0, 0, 0}) - 0.125) < 1e-12);
  CHECK(std::abs(hsc_real(c.r_h, {0, 1, 0, 0}) - 0.125) < 1e-12);
  CHECK(std::abs(hsc_real(c.r_h, {0, 0, 1, 0})) < 1e-12);
  CHECK(std::abs(hsc_real(c.r_h, {0, 0, 0, 1})) < 1e-12);
  // Diagonal mixed direction: 1/16, worked out by hand from the block.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(hsc_real(c.r_h, {inv_sqrt2, 0, inv_sqrt2, 0}) - 1.0 / 16) <
        1e-12);
  // Scale invariance of the normalized value.
  CHECK(std::abs(hsc_real(c.r_h, {2, 0, 2, 0}) - 1.0 / 16) < 1e-12);

  const auto scan = hsc_scan(c, 64);
  CHECK(scan.route_mismatch < 1e-12);
  CHECK(scan.imag_residual < 1e-12);
  // Exact range of H over all lines here: [-49/256, 1/8]; the lower end comes
  // from mixed directions at |zx|^2 = 7/16 with the worst relative phase.
  CHECK(scan.h_max <= 0.125 + 1e-12);
  CHECK(scan.h_min >= -49.0 / 256 - 1e-12);
  CHECK(scan.h_min < -0.15);
  CHECK(scan.spread_abs > 0.1);  // constancy visibly fails
}

TEST_CASE("sphere product interpolates between the factor curvatures") {
  const auto c = compute_curvature(make_s2xs2(1.0, std::sqrt(2.0)),
                                   {1.0, 0.7, 1.9, 2.5});
  CHECK(std::abs(hsc_real(c.r_h, {1, 0, 0, 0}) - 1.0) < 1e-10);
  CHECK(std::abs(hsc_real(c.r_h, {0, 0, 1, 0}) - 0.5) < 1e-10);
  const auto scan = hsc_scan(c, 64);
  CHECK(scan.h_max <= 1.0 + 1e-10);
  CHECK(scan.h_min >= 0.0 - 1e-10);
  CHECK(scan.spread_abs > 0.4);
  CHECK(scan.route_mismatch < 1e-10);
}

TEST_CASE("direction sampler lands on the unit sphere") {
  for (int n = 0; n < 200; ++n) {
    const Vec4d x = direction_sample(n);
    CHECK(std::abs(dot(x, x) - 1.0) < 1e-14);
  }
}
