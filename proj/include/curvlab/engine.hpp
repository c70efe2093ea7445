#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "curvlab/chern_weil.hpp"
#include "curvlab/connections.hpp"
#include "curvlab/decomp.hpp"
#include "curvlab/hsc.hpp"
#include "curvlab/models.hpp"
#include "curvlab/oracle.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/sampling.hpp"

// One-stop per-point analysis: runs the whole pipeline at a point and
// collects every scalar, norm, residual and predicate verdict into a flat
// record. The CLI serializes these records as-is, so anything the engine can
// check is visible to downstream tooling.

namespace curvlab {

struct AnalysisOptions {
  int n_samples = 8;        // sampled points when none are given explicitly
  double tol = 1e-7;        // relative tolerance for predicate zero-tests
  int hsc_directions = 32;  // generic directions per HSC scan
  int threads = 1;
};

struct PointReport {
  Vec4d x{};

  // Structure health and exact-zero pipeline invariants. All of these
  // vanish identically for genuine almost Hermitian data; the observed
  // values measure only floating-point noise.
  double metric_symmetry = 0, j_squared = 0, compatibility = 0, df_norm = 0;
  double compat_residual = 0;   // nabla g for the J-compatible connection
  double nabla_j_residual = 0;  // nabla J for the J-compatible connection
  double u2_residual = 0;       // second slot of r_h stays (1,1)
  double gauge_residual = 0;    // (r_h - r_lc + beta) on (1,1) second slots
  double conj_residual = 0;     // conjugation symmetry of the (1,1) block
  double trace_residual = 0;    // c + d = s_g/4 split
  double balance_residual = 0;  // a + b = a' + b'
  double v_imag = 0;
  double v_corrected = 0;       // v - s_g/12 + w_minus(0,0)/2
  double route_mismatch = 0;    // real vs complex HSC evaluation
  double imag_residual = 0;     // imaginary part of the complex HSC route
  double structural_scale = 1;  // magnitude the budget is scaled by
  bool structural_ok = false;

  // Scalar curvatures and torsion magnitude.
  double norm_a_sq = 0;
  double s_g = 0, s_star = 0, s_c = 0, s_h = 0;
  double d_trace = 0, c_trace = 0;

  // Refined Levi-Civita norms.
  double norm_w_plus_sq = 0, norm_w_minus_sq = 0, norm_r0_sq = 0;
  double norm_wf_sq = 0, norm_w00_sq = 0, norm_rf_sq = 0, norm_r00_sq = 0;
  double w_minus_00 = 0;

  // (1,1)-block entries and derived verdicts.
  Block11 block{};
  double star_residual = 0;  // || *rho - r ||
  double v_defect = 0;       // v - s_g/12, not zero in general
  bool direct = false, reduced = false, dual = false, coeffs = false;
  bool predicates_consistent = false;

  // Holomorphic sectional curvature scan.
  double h_min = 0, h_max = 0, h_mean = 0, h_spread_rel = 0;
  bool h_constant = false;

  // Almost Kaehler gap relations (exact whenever dF = 0).
  double gap_residual = 0;          // (s_star - s_h)/4 - |A|^2/2
  double beta_tilde_residual = 0;   // beta~ + |A|^2/2
  double beta0_residual = 0;        // ||beta0||^2 - |A|^4/4
  double schain_c_residual = 0;     // s_c - (s_g/2 + |A|^2)
  double schain_star_residual = 0;  // s_star - (4 s_c - s_g)

  // Characteristic densities at the point.
  double p1_lc = 0, pf_lc = 0, p1_h = 0, pf_h = 0;
};

namespace detail {

inline double u2_column_residual(const Mat6d& r) {
  double res = 0;
  for (int p = 0; p < 6; ++p) {
    res = std::max(res, std::abs(r(p, 1) - r(p, 4)));
    res = std::max(res, std::abs(r(p, 2) + r(p, 3)));
  }
  return res;
}

inline const std::array<Form2d, 4>& one_one_basis() {
  static const std::array<Form2d, 4> basis = [] {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<Form2d, 4> b{};
    b[0][0] = 1;  // f12
    b[1][5] = 1;  // f34
    b[2][1] = inv_sqrt2;
    b[2][4] = inv_sqrt2;  // (f13 + f24)/sqrt2
    b[3][2] = inv_sqrt2;
    b[3][3] = -inv_sqrt2;  // (f14 - f23)/sqrt2
    return b;
  }();
  return basis;
}

inline double gauge_identity_residual(const CurvaturePoint& c) {
  const Mat6d diff = c.r_h - c.r_lc + c.beta;
  double res = 0;
  for (int p = 0; p < 6; ++p)
    for (const auto& v : one_one_basis()) {
      double s = 0;
      for (int q = 0; q < 6; ++q) s += diff(p, q) * v[q];
      res = std::max(res, std::abs(s));
    }
  return res;
}

}  // namespace detail

// Commutator-trace relations against the fundamental form.
struct GapReport {
  double gap_residual = 0;
  double beta_tilde = 0;
  double beta_tilde_residual = 0;
  double beta0_norm_sq = 0;
  double beta0_residual = 0;
  double schain_c_residual = 0;     // s_c = s_g/2 + |A|^2
  double schain_star_residual = 0;  // s_star = 4 s_c - s_g
};

inline GapReport gap_report(const CurvaturePoint& c, const DecompPoint& d) {
  GapReport out;
  const double a2 = c.norm_a_sq;
  out.gap_residual = std::abs(0.25 * (d.lc.s_star - d.herm.s_h) - 0.5 * a2);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Form2d fhat{};
  fhat[0] = inv_sqrt2;
  fhat[5] = inv_sqrt2;
  out.beta_tilde = eval_form(c.beta, fhat, fhat);
  out.beta_tilde_residual = std::abs(out.beta_tilde + 0.5 * a2);

  Form2d bf{};
  for (int p = 0; p < 6; ++p) {
    double s = 0;
    for (int q = 0; q < 6; ++q) s += c.beta(p, q) * fhat[q];
    bf[p] = s;
  }
  const Form2d beta0 = bf - out.beta_tilde * fhat;
  out.beta0_norm_sq = dot(beta0, beta0);
  out.beta0_residual = std::abs(out.beta0_norm_sq - 0.25 * a2 * a2);

  out.schain_c_residual = std::abs(d.herm.s_c - (0.5 * d.lc.s_g + a2));
  out.schain_star_residual =
      std::abs(d.lc.s_star - (4 * d.herm.s_c - d.lc.s_g));
  return out;
}

// Constant-sectional scalar chain for the parametric models with H = k.
struct ScalarChainReport {
  double sc_residual = 0;     // s_c = 4k - 2v
  double sg_residual = 0;     // s_g = 12 v
  double sstar_residual = 0;  // s_star = 16k - 20v
  double rf_residual = 0;     // |R_F|^2 = (k - 2v)^2
};

inline ScalarChainReport scalar_chain(double k, const DecompPoint& d) {
  const double v = std::real(d.block.v);
  ScalarChainReport out;
  out.sc_residual = std::abs(d.herm.s_c - (4 * k - 2 * v));
  out.sg_residual = std::abs(d.lc.s_g - 12 * v);
  out.sstar_residual = std::abs(d.lc.s_star - (16 * k - 20 * v));
  out.rf_residual = std::abs(d.lc.norm_rf_sq - (k - 2 * v) * (k - 2 * v));
  return out;
}

inline PointReport analyze_point(const Model& model, const Vec4d& x,
                                 const AnalysisOptions& opt) {
  PointReport r;
  r.x = x;

  const auto pt = build_point_geometry(model, x);
  const auto cv = compute_curvature(pt);
  const auto d = decompose(cv);
  const auto scan = hsc_scan(cv, opt.hsc_directions);
  const auto gap = gap_report(cv, d);

  r.metric_symmetry = pt.health.metric_symmetry;
  r.j_squared = pt.health.j_squared;
  r.compatibility = pt.health.compatibility;
  r.df_norm = pt.health.df_norm;
  r.compat_residual = cv.compat_residual;
  r.nabla_j_residual = cv.nabla_j_residual;
  r.u2_residual = detail::u2_column_residual(cv.r_h);
  r.gauge_residual = detail::gauge_identity_residual(cv);
  r.conj_residual = d.conj_residual;
  r.trace_residual = d.lc.trace_split_residual;
  r.balance_residual = d.balance_residual;
  r.v_imag = d.v_imag;
  r.v_corrected = d.v_corrected;
  r.route_mismatch = scan.route_mismatch;
  r.imag_residual = scan.imag_residual;

  r.norm_a_sq = cv.norm_a_sq;
  r.s_g = d.lc.s_g;
  r.s_star = d.lc.s_star;
  r.s_c = d.herm.s_c;
  r.s_h = d.herm.s_h;
  r.d_trace = d.lc.d;
  r.c_trace = d.lc.c;

  r.norm_w_plus_sq = d.lc.norm_w_plus_sq;
  r.norm_w_minus_sq = d.lc.norm_w_minus_sq;
  r.norm_r0_sq = d.lc.norm_r0_sq;
  r.norm_wf_sq = d.lc.norm_wf_sq;
  r.norm_w00_sq = d.lc.norm_w00_sq;
  r.norm_rf_sq = d.lc.norm_rf_sq;
  r.norm_r00_sq = d.lc.norm_r00_sq;
  r.w_minus_00 = d.lc.w_minus(0, 0);

  r.block = d.block;
  r.star_residual = d.herm.star_residual;
  r.v_defect = d.v_defect;
  const auto zero = block_zero_test(d.block, opt.tol);
  r.direct = constant_direct(d.block, zero);
  r.reduced = constant_reduced(d.block, zero);
  r.dual = dual_pair(d.block, zero);
  r.coeffs = constancy_coefficients_vanish(d.block, d.block.k, zero);
  r.predicates_consistent =
      (r.direct == (r.reduced && r.dual)) && (r.coeffs == r.direct);

  r.h_min = scan.h_min;
  r.h_max = scan.h_max;
  r.h_mean = scan.h_mean;
  r.h_spread_rel = scan.spread_rel;
  r.h_constant = scan.spread_rel <= opt.tol;

  r.gap_residual = gap.gap_residual;
  r.beta_tilde_residual = gap.beta_tilde_residual;
  r.beta0_residual = gap.beta0_residual;
  r.schain_c_residual = gap.schain_c_residual;
  r.schain_star_residual = gap.schain_star_residual;

  const auto nl = block_norms(cv.r_lc);
  const auto nh = block_norms(cv.r_h);
  r.p1_lc = p1_density(nl);
  r.pf_lc = pf_density(nl);
  r.p1_h = p1_density(nh);
  r.pf_h = pf_density(nh);

  // Everything in the first group is an identity; the budget scales with the
  // curvature magnitude so large-k models are judged fairly.
  double scale = std::max(1.0, std::abs(r.s_g));
  for (const Complex* e :
       {&d.block.k, &d.block.l, &d.block.u, &d.block.w, &d.block.v,
        &d.block.x, &d.block.a, &d.block.b, &d.block.ap, &d.block.bp})
    scale = std::max(scale, std::abs(*e));
  r.structural_scale = scale;
  const double budget = std::max(1e-8, model.info.structural_tol) * scale;
  const double worst = std::max(
      {r.metric_symmetry, r.j_squared, r.compatibility, r.compat_residual,
       r.nabla_j_residual, r.u2_residual, r.gauge_residual, r.conj_residual,
       r.trace_residual, r.balance_residual, r.v_imag,
       std::abs(r.v_corrected), r.route_mismatch, r.imag_residual});
  r.structural_ok = worst <= budget;
  return r;
}

// Deterministic low-discrepancy interior points; the same count always
// produces the same list.
inline std::vector<Vec4d> sample_points(const ModelInfo& info, int n) {
  std::vector<Vec4d> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(kronecker_point(info, i));
  return pts;
}

inline std::vector<PointReport> analyze_model(const Model& model,
                                              const std::vector<Vec4d>& pts,
                                              const AnalysisOptions& opt) {
  std::vector<PointReport> out(pts.size());
  parallel_for(static_cast<int>(pts.size()), opt.threads,
               [&](int i) { out[static_cast<std::size_t>(i)] =
                                analyze_point(model, pts[static_cast<std::size_t>(i)], opt); });
  return out;
}

}  // namespace curvlab
