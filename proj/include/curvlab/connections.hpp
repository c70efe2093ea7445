#pragma once

#include <array>

#include "curvlab/core.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/jet.hpp"
#include "curvlab/two_form.hpp"

// Connection and curvature assembly at a point.
//
// Two connections are computed side by side: the Levi-Civita connection D of
// g, and the J-compatible metric connection nabla = D + A obtained from the
// torsion correction
//
//   A_X = -1/2 J (D_X J),
//
// which kills the covariant derivative of J exactly ([A_X, J] = -D_X J as an
// algebraic identity) while each A_X stays skew relative to g, so nabla g = 0
// and nabla J = 0 both hold. Curvature comes from the coordinate formula
//
//   R(d_i, d_j) = d_i Theta_j - d_j Theta_i + [Theta_i, Theta_j],
//
// valid for any connection matrices Theta regardless of torsion. All results
// are pushed into the adapted orthonormal frame carried by PointGeometry and
// lowered into the pair basis of two_form.hpp with the sign convention
//
//   R6[p=(ab)][q=(cd)] = g(R(f_a, f_b) f_c, f_d),
//
// i.e. the FIRST index pair is the row (curvature-as-two-form slot) and the
// second pair spans the endomorphism slot.

namespace curvlab {

struct CurvaturePoint {
  Mat6d r_lc{};   // Levi-Civita curvature, pair basis, adapted frame
  Mat6d r_h{};    // J-compatible connection curvature, same basis
  Mat6d beta{};   // commutator tensor beta(f_a, f_b) = [A_a, A_b], lowered
  std::array<Mat4d, 4> a_frame{};  // A along f_a, frame components
  double norm_a_sq = 0;            // |A|^2 = 1/2 sum_a tr(A_a^T A_a)
  double s_g = 0;                  // Riemannian scalar curvature = -2 tr(r_lc)
  double compat_residual = 0;      // max |nabla g| component (both connections)
  double nabla_j_residual = 0;     // max |nabla J| component for nabla = D + A
};

namespace detail {

// Lower a frame curvature operator into the 6x6 pair-basis matrix. fr[a][b]
// holds the operator R(f_a, f_b) in frame components.
inline Mat6d pair_matrix_from_frame_ops(const Mat4d fr[4][4]) {
  Mat6d r6{};
  for (int p = 0; p < 6; ++p) {
    const int a = kPairIdx[p][0], b = kPairIdx[p][1];
    for (int q = 0; q < 6; ++q) {
      const int c = kPairIdx[q][0], d = kPairIdx[q][1];
      r6(p, q) = fr[a][b](d, c);  // g(R(f_a,f_b) f_c, f_d), orthonormal frame
    }
  }
  return r6;
}

}  // namespace detail

inline CurvaturePoint compute_curvature(const PointGeometry& pt) {
  CurvaturePoint out;

  // ===== Christoffel symbols as first-order jets =====
  // Gamma[i](k, j) = Gamma^k_{ij}; the jet grade keeps d Gamma for curvature.
  Mat<Jet1, 4> ginv1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ginv1(i, j) = jet1_of(pt.ginv(i, j));

  std::array<Mat<Jet1, 4>, 4> dg;  // dg[i](j, l) = d_i g_{jl}
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) dg[i](j, l) = partial(pt.g(j, l), i);

  std::array<Mat<Jet1, 4>, 4> gamma;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        Jet1 s;
        for (int l = 0; l < 4; ++l)
          s = s + ginv1(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[i](k, j) = Jet1(0.5) * s;
      }

  // ===== Torsion correction A_i = -1/2 J (D_i J) =====
  Mat<Jet1, 4> j1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) j1(i, j) = jet1_of(pt.J(i, j));

  std::array<Mat<Jet1, 4>, 4> a;  // a[i](k, j) = A^k_{ij}
  for (int i = 0; i < 4; ++i) {
    Mat<Jet1, 4> dj;  // covariant derivative (D_i J)^k_j
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) dj(k, j) = partial(pt.J(k, j), i);
    dj = dj + gamma[i] * j1 - j1 * gamma[i];
    a[i] = Jet1(-0.5) * (j1 * dj);
  }

  // ===== Curvature of both connections in coordinates =====
  // F_ij = d_i Theta_j - d_j Theta_i + [Theta_i, Theta_j], values only.
  std::array<Mat<Jet1, 4>, 4> theta;
  for (int i = 0; i < 4; ++i) theta[i] = gamma[i] + a[i];

  Mat4d f_lc[4][4], f_h[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      {
        const Mat4d gi = values_of(gamma[i]), gj = values_of(gamma[j]);
        f_lc[i][j] = partials_of(gamma[j], i) - partials_of(gamma[i], j) +
                     gi * gj - gj * gi;
      }
      {
        const Mat4d ti = values_of(theta[i]), tj = values_of(theta[j]);
        f_h[i][j] = partials_of(theta[j], i) - partials_of(theta[i], j) +
                    ti * tj - tj * ti;
      }
    }

  // ===== Push everything into the adapted frame =====
  const Mat4d& fr = pt.frame;
  const Mat4d& fi = pt.frame_inv;

  Mat4d rfr_lc[4][4], rfr_h[4][4];
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B) {
      Mat4d slc{}, sh{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double wgt = fr(i, A) * fr(j, B);
          if (wgt == 0) continue;
          slc = slc + wgt * f_lc[i][j];
          sh = sh + wgt * f_h[i][j];
        }
      rfr_lc[A][B] = fi * slc * fr;
      rfr_h[A][B] = fi * sh * fr;
    }
  out.r_lc = detail::pair_matrix_from_frame_ops(rfr_lc);
  out.r_h = detail::pair_matrix_from_frame_ops(rfr_h);
  out.s_g = -2.0 * out.r_lc.trace();

  for (int A = 0; A < 4; ++A) {
    Mat4d sa{};
    for (int i = 0; i < 4; ++i) {
      if (fr(i, A) == 0) continue;
      sa = sa + fr(i, A) * values_of(a[i]);
    }
    out.a_frame[A] = fi * sa * fr;
    out.norm_a_sq += 0.5 * frobenius_norm_sq(out.a_frame[A]);
  }

  Mat4d beta_ops[4][4];
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B)
      beta_ops[A][B] =
          out.a_frame[A] * out.a_frame[B] - out.a_frame[B] * out.a_frame[A];
  out.beta = detail::pair_matrix_from_frame_ops(beta_ops);

  // ===== Compatibility residuals =====
  // nabla_i g_{jk} = d_i g_{jk} - Theta^m_{ij} g_{mk} - Theta^m_{ik} g_{jm},
  // nabla_i J^k_j = d_i J^k_j + Theta^k_{im} J^m_j - Theta^m_{ij} J^k_m.
  for (int i = 0; i < 4; ++i) {
    const Mat4d ti = values_of(theta[i]);
    Mat4d dgi, dji;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        dgi(r, c) = pt.g(r, c).d[i];
        dji(r, c) = pt.J(r, c).d[i];
      }
    const Mat4d ng = dgi - ti.transposed() * pt.g0 - pt.g0 * ti;
    const Mat4d nj = dji + ti * pt.J0 - pt.J0 * ti;
    out.compat_residual = std::max(out.compat_residual, max_abs(ng));
    out.nabla_j_residual = std::max(out.nabla_j_residual, max_abs(nj));
  }

  return out;
}

// Convenience wrapper: structure assembly plus curvature in one call.
inline CurvaturePoint compute_curvature(const Model& model, const Vec4d& x,
                                        bool validate = true) {
  return compute_curvature(build_point_geometry(model, x, validate));
}

}  // namespace curvlab
