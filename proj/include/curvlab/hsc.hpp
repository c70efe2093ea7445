#pragma once

#include <algorithm>
#include <cmath>

#include "curvlab/connections.hpp"
#include "curvlab/core.hpp"
#include "curvlab/decomp.hpp"
#include "curvlab/sampling.hpp"
#include "curvlab/two_form.hpp"

// Sectional value on complex lines. Two evaluation routes:
//
//   real route:     H(X) = -R(X, JX, X, JX) / |X|^4, X a frame vector, via
//                   the pair components of X ^ JX against the 6x6 matrix;
//   complex route:  H(Z) = sum u_i u_j M[i][j] / (|zx|^2 + |zy|^2)^2 with
//                   u = (zx conj zx, zx conj zy, zy conj zx, zy conj zy) on
//                   the (1,1)-block M.
//
// The conversion factor between the two is exactly 1 when zx = X1 + i X2,
// zy = X3 + i X4 in adapted frame components; the scan records the observed
// mismatch as a cross-check of the basis bookkeeping.

namespace curvlab {

// J in adapted frame components: f2 = J f1, f4 = J f3.
inline Vec4d frame_j(const Vec4d& x) { return {-x[1], x[0], -x[3], x[2]}; }

inline double hsc_real(const Mat6d& r_h, const Vec4d& x) {
  const Vec4d jx = frame_j(x);
  Form2d omega{};
  for (int p = 0; p < 6; ++p) {
    const int a = kPairIdx[p][0], b = kPairIdx[p][1];
    omega[p] = x[a] * jx[b] - x[b] * jx[a];
  }
  const double n2 = dot(x, x);
  return -eval_form(r_h, omega, omega) / (n2 * n2);
}

inline Complex hsc_complex_full(const Mat4c& m, Complex zx, Complex zy) {
  const Complex u[4] = {zx * std::conj(zx), zx * std::conj(zy),
                        zy * std::conj(zx), zy * std::conj(zy)};
  Complex s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += u[i] * u[j] * m(i, j);
  const double n2 = std::norm(zx) + std::norm(zy);
  return s / (n2 * n2);
}

inline double hsc_complex(const Mat4c& m, Complex zx, Complex zy) {
  return std::real(hsc_complex_full(m, zx, zy));
}

struct HscScan {
  double h_min = 0, h_max = 0, h_mean = 0;
  double spread_abs = 0;      // h_max - h_min over the direction set
  double spread_rel = 0;      // spread_abs / max(1, |h_mean|)
  double route_mismatch = 0;  // max |real route - complex route|
  double imag_residual = 0;   // max |Im H| from the complex route
};

// Scan H over a deterministic direction set (frame axes plus a Kronecker-fed
// Hopf family). n_dirs counts the generic directions; 4 axis directions are
// always included.
inline HscScan hsc_scan(const Mat6d& r_h, const Mat4c& block_m, int n_dirs) {
  HscScan out;
  out.h_min = 1e300;
  out.h_max = -1e300;
  double sum = 0;
  int count = 0;
  auto visit = [&](const Vec4d& x) {
    const double h = hsc_real(r_h, x);
    const Complex hc =
        hsc_complex_full(block_m, Complex(x[0], x[1]), Complex(x[2], x[3]));
    out.route_mismatch = std::max(out.route_mismatch, std::abs(h - hc.real()));
    out.imag_residual = std::max(out.imag_residual, std::abs(hc.imag()));
    out.h_min = std::min(out.h_min, h);
    out.h_max = std::max(out.h_max, h);
    sum += h;
    ++count;
  };
  for (int a = 0; a < 4; ++a) {
    Vec4d x{};
    x[a] = 1;
    visit(x);
  }
  for (int n = 0; n < n_dirs; ++n) visit(direction_sample(n));
  out.h_mean = sum / count;
  out.spread_abs = out.h_max - out.h_min;
  out.spread_rel = out.spread_abs / std::max(1.0, std::abs(out.h_mean));
  return out;
}

inline HscScan hsc_scan(const CurvaturePoint& c, int n_dirs = 32) {
  return hsc_scan(c.r_h, block11_matrix(c.r_h), n_dirs);
}

}  // namespace curvlab
