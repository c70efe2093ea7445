#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "curvlab/core.hpp"
#include "curvlab/jet.hpp"
#include "curvlab/models.hpp"

// Pointwise structure assembly: evaluate the fields, validate that they form
// an almost Hermitian structure, and build an adapted orthonormal frame
// (e, Je, f, Jf). The frame fixes the orientation (vol = F^2/2 is positive in
// it), so all two-form work downstream uses the constant-coefficient machinery
// from two_form.hpp.

namespace curvlab {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StructureHealth {
  double metric_symmetry = 0;  // max |g_ij - g_ji|
  double j_squared = 0;        // max |(J^2 + I)^i_j|
  double compatibility = 0;    // max |(J^T g J - g)_ij|
  double min_pivot = 0;        // smallest Cholesky pivot of g (positivity)
  double df_norm = 0;          // max |(dF)_ijk|, zero iff almost Kaehler
};

struct PointGeometry {
  Vec4d x{};
  Mat<Jet2, 4> g, J, ginv;
  Mat4d g0, ginv0, J0;
  Mat4d frame;       // column c = adapted frame vector f_{c+1} in coordinates
  Mat4d frame_inv;
  double orientation_sign = 1;  // chart orientation vs the F-orientation
  StructureHealth health;
};

namespace detail {

// Cholesky pivots; returns smallest pivot (<= 0 signals not positive definite).
inline double min_cholesky_pivot(Mat4d a) {
  double min_piv = 1e300;
  for (int k = 0; k < 4; ++k) {
    double piv = a(k, k);
    min_piv = std::min(min_piv, piv);
    if (!(piv > 0)) return piv;
    const double s = std::sqrt(piv);
    for (int i = k; i < 4; ++i) a(i, k) /= s;
    for (int j = k + 1; j < 4; ++j)
      for (int i = j; i < 4; ++i) a(i, j) -= a(i, k) * a(j, k);
  }
  return min_piv;
}

}  // namespace detail

inline PointGeometry build_point_geometry(const Model& model, const Vec4d& x,
                                          bool validate = true) {
  PointGeometry p;
  p.x = x;
  model.eval(x, p.g, p.J);
  p.g0 = values_of(p.g);
  p.J0 = values_of(p.J);

  const double scale = std::max(1.0, max_abs(p.g0));
  const double tol = model.info.structural_tol;

  p.health.metric_symmetry = max_abs(p.g0 - p.g0.transposed());
  p.health.j_squared = max_abs(p.J0 * p.J0 + Mat4d::identity());
  p.health.compatibility =
      max_abs(p.J0.transposed() * p.g0 * p.J0 - p.g0);
  p.health.min_pivot = detail::min_cholesky_pivot(p.g0);

  if (validate) {
    auto complain = [&](const char* what, double val) {
      throw StructureError("structure validation failed at point (" +
                           std::to_string(x[0]) + ", " + std::to_string(x[1]) +
                           ", " + std::to_string(x[2]) + ", " +
                           std::to_string(x[3]) + ") of model '" +
                           model.info.name + "': " + what + " residual " +
                           std::to_string(val));
    };
    if (p.health.metric_symmetry > tol * scale)
      complain("metric symmetry", p.health.metric_symmetry);
    if (p.health.j_squared > tol * std::max(1.0, max_abs(p.J0)))
      complain("J^2 = -I", p.health.j_squared);
    if (p.health.compatibility > tol * scale)
      complain("J-metric compatibility", p.health.compatibility);
    if (!(p.health.min_pivot > 0))
      complain("metric positivity (Cholesky pivot)", p.health.min_pivot);
  }

  p.ginv = inverse(p.g);
  p.ginv0 = values_of(p.ginv);

  // Adapted frame by Gram-Schmidt on (v, Jv, w, Jw).
  auto gdot = [&](const Vec4d& u, const Vec4d& v) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += u[i] * p.g0(i, j) * v[j];
    return s;
  };
  auto jmul = [&](const Vec4d& u) { return p.J0 * u; };
  auto col = [](int i) {
    Vec4d v{};
    v[i] = 1;
    return v;
  };

  Vec4d f1 = col(0);
  f1 = (1.0 / std::sqrt(gdot(f1, f1))) * f1;
  Vec4d f2 = jmul(f1);
  f2 = (1.0 / std::sqrt(gdot(f2, f2))) * f2;

  // Pick the coordinate direction with the largest residual after removing
  // the (f1, f2) plane. Near-ties go to the lowest index so the frame choice
  // is stable across points where two residuals agree up to rounding.
  Vec4d best{};
  double best_norm = -1;
  for (int c = 1; c < 4; ++c) {
    Vec4d v = col(c);
    v = v - gdot(v, f1) * f1 - gdot(v, f2) * f2;
    const double n = gdot(v, v);
    if (n > best_norm * (1 + 1e-9)) {
      best_norm = n;
      best = v;
    }
  }
  if (best_norm < 1e-20)
    throw StructureError("adapted frame construction degenerate at sampled point");
  Vec4d f3 = (1.0 / std::sqrt(best_norm)) * best;
  Vec4d f4 = jmul(f3);
  f4 = (1.0 / std::sqrt(gdot(f4, f4))) * f4;

  for (int i = 0; i < 4; ++i) {
    p.frame(i, 0) = f1[i];
    p.frame(i, 1) = f2[i];
    p.frame(i, 2) = f3[i];
    p.frame(i, 3) = f4[i];
  }
  p.frame_inv = inverse(p.frame);
  p.orientation_sign = det(p.frame) > 0 ? 1.0 : -1.0;

  // dF in coordinates: F_ij = J^k_i g_kj (so F(X,Y) = g(JX,Y)),
  // (dF)_ijk = d_i F_jk - d_j F_ik + d_k F_ij.
  Mat<Jet1, 4> F{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet2 s(0);
      for (int k = 0; k < 4; ++k) s = s + p.J(k, i) * p.g(k, j);
      F(i, j) = jet1_of(s);
    }
  double df = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const double v = F(j, k).d[i] - F(i, k).d[j] + F(i, j).d[k];
        df = std::max(df, std::abs(v));
      }
  p.health.df_norm = df;

  return p;
}

}  // namespace curvlab
