#pragma once

#include <algorithm>
#include <cmath>

#include "curvlab/block_conditions.hpp"
#include "curvlab/connections.hpp"
#include "curvlab/core.hpp"
#include "curvlab/two_form.hpp"

// Curvature decompositions at a point.
//
// Levi-Civita side: with B = -r_lc written against the self-dual basis
// (F-hat, psi1, psi2) and the anti-self-dual basis, the self-dual block
// refines into
//
//   [ d      W_F        ]          plus the mixed block   [ R_F  ]
//   [ W_F^T  c/2 + W00  ]                                 [ R00  ],
//
// where d is the F-trace (s_star = 4d), c the psi-trace (c + d = s_g/4),
// W_F the F-psi Weyl interaction, W00 the trace-free psi-psi Weyl part, R_F
// the F-row of the traceless-Ricci block and R00 its psi-rows. Weyl parts are
// the diagonal blocks minus s_g/12.
//
// J-compatible side: the (1,1)-block in the complex-line basis carries the
// parameters of block_conditions.hpp. Its two Ricci-type contractions are
//
//   rho = [ k+w        conj(ap+b) ]      r = [ k+u        conj(a+bp) ]
//         [ ap+b       u+l        ]          [ a+bp       w+l        ]
//
// with scalar traces s_c = k+l+u+w (so s_h = 2 s_c) and the duality
// *rho = r holding exactly when {k = l, ap+b = -(a+bp)}.

namespace curvlab {

using Mat3d = Mat<double, 3, 3>;
using Block11 = BlockParams<Complex>;

struct RefinedLC {
  Mat3d a_pp{}, a_pm{}, a_mp{}, a_mm{};  // blocks of -r_lc in the SD/ASD bases
  Mat3d w_plus{}, w_minus{};
  double s_g = 0, s_star = 0;
  double d = 0, c = 0;
  Vec<double, 2> wf{};        // (a_pp(0,1), a_pp(0,2))
  Mat<double, 2, 2> w00{};    // psi-psi part minus (c/2) I
  Vec<double, 3> rf{};        // a_pm row 0
  Mat<double, 2, 3> r00{};    // a_pm rows 1..2
  double norm_w_plus_sq = 0, norm_w_minus_sq = 0, norm_r0_sq = 0;
  double norm_wf_sq = 0, norm_w00_sq = 0, norm_rf_sq = 0, norm_r00_sq = 0;
  double trace_split_residual = 0;  // |c + d - s_g/4|
};

inline RefinedLC refine_lc(const Mat6d& r_lc) {
  RefinedLC out;
  const Mat6d b = -r_lc;
  const auto& sd = sd_basis();
  const auto& asd = asd_basis();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.a_pp(i, j) = eval_form(b, sd[i], sd[j]);
      out.a_pm(i, j) = eval_form(b, sd[i], asd[j]);
      out.a_mp(i, j) = eval_form(b, asd[i], sd[j]);
      out.a_mm(i, j) = eval_form(b, asd[i], asd[j]);
    }
  out.s_g = 2.0 * (out.a_pp.trace() + out.a_mm.trace());
  out.d = out.a_pp(0, 0);
  out.s_star = 4.0 * out.d;
  out.c = out.a_pp(1, 1) + out.a_pp(2, 2);
  out.trace_split_residual = std::abs(out.c + out.d - 0.25 * out.s_g);
  out.wf = {out.a_pp(0, 1), out.a_pp(0, 2)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.w00(i, j) = out.a_pp(1 + i, 1 + j);
      if (i == j) out.w00(i, j) -= 0.5 * out.c;
    }
  out.rf = {out.a_pm(0, 0), out.a_pm(0, 1), out.a_pm(0, 2)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) out.r00(i, j) = out.a_pm(1 + i, j);

  out.w_plus = out.a_pp;
  out.w_minus = out.a_mm;
  for (int i = 0; i < 3; ++i) {
    out.w_plus(i, i) -= out.s_g / 12.0;
    out.w_minus(i, i) -= out.s_g / 12.0;
  }
  out.norm_w_plus_sq = frobenius_norm_sq(out.w_plus);
  out.norm_w_minus_sq = frobenius_norm_sq(out.w_minus);
  out.norm_r0_sq = frobenius_norm_sq(out.a_pm);
  out.norm_wf_sq = dot(out.wf, out.wf);
  out.norm_w00_sq = frobenius_norm_sq(out.w00);
  out.norm_rf_sq = dot(out.rf, out.rf);
  out.norm_r00_sq = frobenius_norm_sq(out.r00);
  return out;
}

// Extract the named block parameters from a curvature matrix. The residual
// records how far the matrix is from the conjugation symmetry
// conj(M[i][j]) = M[s(i)][s(j)], s = (0)(3)(1 2), which genuine real
// curvature satisfies identically.
struct Block11Data {
  Block11 p{};
  Mat4c m{};
  double conj_residual = 0;
};

inline Block11Data block11_from(const Mat6d& r6) {
  Block11Data out;
  out.m = block11_matrix(r6);
  constexpr int s[4] = {0, 2, 1, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.conj_residual = std::max(
          out.conj_residual, std::abs(std::conj(out.m(i, j)) - out.m(s[i], s[j])));
  out.p.k = out.m(0, 0);
  out.p.w = out.m(0, 3);
  out.p.u = out.m(3, 0);
  out.p.l = out.m(3, 3);
  out.p.a = out.m(0, 2);
  out.p.ap = out.m(2, 0);
  out.p.b = out.m(2, 3);
  out.p.bp = out.m(3, 2);
  out.p.v = out.m(2, 1);
  out.p.x = out.m(2, 2);
  return out;
}

struct HermData {
  Herm2 rho{}, r{};
  double s_c = 0, s_h = 0;
  double star_residual = 0;  // ||*rho - r||, zero iff the dual pairing holds
};

inline HermData herm_part(const Block11& p) {
  HermData out;
  const Complex ab = p.ap + p.b, abp = p.a + p.bp;
  out.rho(0, 0) = p.k + p.w;
  out.rho(1, 1) = p.u + p.l;
  out.rho(1, 0) = ab;
  out.rho(0, 1) = std::conj(ab);
  out.r(0, 0) = p.k + p.u;
  out.r(1, 1) = p.w + p.l;
  out.r(1, 0) = abp;
  out.r(0, 1) = std::conj(abp);
  out.s_c = std::real(p.k + p.l + p.u + p.w);
  out.s_h = 2.0 * out.s_c;
  out.star_residual = herm2_norm(star_11(out.rho) - out.r);
  return out;
}

// Full decomposition bundle for one curvature point.
struct DecompPoint {
  RefinedLC lc{};
  Block11 block{};
  Mat4c block_m{};
  double conj_residual = 0;
  HermData herm{};
  double v_defect = 0;        // Re v - s_g/12: NOT zero in general
  double v_corrected = 0;     // Re v - s_g/12 + w_minus(0,0)/2: identically zero
  double balance_residual = 0;  // |a + b - ap - bp|
  double v_imag = 0;            // |Im v|
};

inline DecompPoint decompose(const CurvaturePoint& c) {
  DecompPoint out;
  out.lc = refine_lc(c.r_lc);
  auto bd = block11_from(c.r_h);
  out.block = bd.p;
  out.block_m = bd.m;
  out.conj_residual = bd.conj_residual;
  out.herm = herm_part(out.block);
  const double v = std::real(out.block.v);
  out.v_defect = v - out.lc.s_g / 12.0;
  out.v_corrected = out.v_defect + 0.5 * out.lc.w_minus(0, 0);
  out.balance_residual =
      std::abs((out.block.a + out.block.b) - (out.block.ap + out.block.bp));
  out.v_imag = std::abs(std::imag(out.block.v));
  return out;
}

// Tolerance-based zero test for predicates over floating-point blocks,
// scaled by the magnitude of the block.
struct ScaledZero {
  double eps;
  bool operator()(const Complex& z) const { return std::abs(z) <= eps; }
};

inline ScaledZero block_zero_test(const Block11& p, double rel_tol) {
  double scale = 1.0;
  for (const Complex* e : {&p.k, &p.l, &p.u, &p.w, &p.v, &p.x, &p.a, &p.b,
                           &p.ap, &p.bp})
    scale = std::max(scale, std::abs(*e));
  return ScaledZero{rel_tol * scale};
}

}  // namespace curvlab
