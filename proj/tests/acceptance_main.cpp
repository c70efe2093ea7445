#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "curvlab/chern_weil.hpp"
#include "curvlab/engine.hpp"
#include "curvlab/models.hpp"
#include "curvlab/oracle.hpp"

// Acceptance gate: ten numbered criteria, one [PASS]/[FAIL] line each, with
// the tolerance budgets pinned in this file. Run all or a single one with
// --criterion N. The process exits nonzero if any selected criterion fails,
// including failures caused by blowing the per-criterion time limit.

namespace {

using namespace curvlab;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// ===== criterion 1: flat-torus nullity =====

Outcome criterion1() {
  const Model m = make_torus();
  AnalysisOptions opt;
  opt.tol = 1e-12;
  double worst = 0;
  for (const auto& x : sample_points(m.info, 10)) {
    const auto r = analyze_point(m, x, opt);
    worst = std::max(
        {worst, std::abs(r.s_g), std::abs(r.s_star), std::abs(r.s_c),
         r.norm_a_sq, r.norm_w_plus_sq, r.norm_w_minus_sq, r.norm_r0_sq,
         std::abs(r.h_min), std::abs(r.h_max), std::abs(r.p1_lc),
         std::abs(r.pf_lc), std::abs(r.p1_h), std::abs(r.pf_h),
         r.star_residual, std::abs(r.v_defect),
         std::abs(r.block.k), std::abs(r.block.x)});
  }
  const auto idx = index_report(m, 4);
  worst = std::max({worst, std::abs(idx.sigma_lc), std::abs(idx.chi_lc),
                    std::abs(idx.sigma_h), std::abs(idx.chi_h)});
  Outcome o;
  o.pass = worst < 1e-12;
  o.detail = "max |value| " + fmt(worst) + ", budget 1e-12";
  return o;
}

// ===== criterion 2: constant-H models satisfy all three equivalents =====

Outcome criterion2() {
  Outcome o;
  o.pass = true;
  double worst_spread = 0, worst_wm = 0, worst_star = 0;
  AnalysisOptions opt;
  opt.tol = 1e-8;
  for (const Model& m :
       {make_cp2(1), make_cp2(4), make_ball(-1), make_ball(-4)}) {
    double hmin = 1e300, hmax = -1e300;
    for (const auto& x : sample_points(m.info, 50)) {
      const auto r = analyze_point(m, x, opt);
      hmin = std::min(hmin, r.h_min);
      hmax = std::max(hmax, r.h_max);
      worst_wm = std::max(worst_wm, std::sqrt(r.norm_w_minus_sq));
      worst_star = std::max(worst_star, r.star_residual);
    }
    const double spread =
        (hmax - hmin) / std::max(1.0, std::abs(0.5 * (hmax + hmin)));
    worst_spread = std::max(worst_spread, spread);
  }
  o.pass = worst_spread < 1e-8 && worst_wm < 1e-8 && worst_star < 1e-8;
  o.detail = "H spread " + fmt(worst_spread) + ", |W-| " + fmt(worst_wm) +
             ", |*rho - r| " + fmt(worst_star) + ", budgets 1e-8";
  return o;
}

// ===== criterion 3: the nilmanifold breaks constancy and duality =====

Outcome criterion3() {
  const Model m = make_kt();
  AnalysisOptions opt;
  opt.tol = 1e-8;
  int bad = 0;
  double min_spread = 1e300, min_star = 1e300;
  for (const auto& x : sample_points(m.info, 50)) {
    const auto r = analyze_point(m, x, opt);
    min_spread = std::min(min_spread, r.h_spread_rel);
    min_star = std::min(min_star, r.star_residual);
    if (r.h_constant || r.star_residual <= 1e-3) ++bad;
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = "min H spread " + fmt(min_spread) + " (must fail 1e-8), min |*rho - r| " +
             fmt(min_star) + " (budget > 1e-3)";
  return o;
}

// ===== criterion 4: exact equivalence sweep, grid + random =====

Outcome criterion4() {
  const auto grid = run_grid_sweep();
  const auto rnd = run_random_sweep(10000, 20240817ULL);
  Outcome o;
  o.pass = grid.cases == 3249 && grid.disagreements == 0 &&
           grid.constraint_violations == 0 && rnd.cases == 10000 &&
           rnd.disagreements == 0 && rnd.constraint_violations == 0;
  std::ostringstream d;
  d << "grid " << grid.cases << " cases / " << grid.disagreements
    << " disagreements, random " << rnd.cases << " / " << rnd.disagreements;
  o.detail = d.str();
  return o;
}

// ===== criterion 5: coefficient groups match the direct predicate =====

Outcome criterion5() {
  long long mismatches = 0;
  const auto sweep = run_random_sweep(
      10000, 771120517ULL,
      [&](long long, const RatBlock&, const OracleVerdict& v) {
        mismatches += (v.coeffs != v.direct);
      });
  Outcome o;
  o.pass = sweep.cases == 10000 && mismatches == 0 &&
           sweep.constraint_violations == 0;
  std::ostringstream d;
  d << sweep.cases << " cases, " << mismatches << " coeff/direct mismatches";
  o.detail = d.str();
  return o;
}

// ===== criterion 6: scalar chain on the constant-H families =====

Outcome criterion6() {
  double worst_ratio = 0;
  for (const Model& m :
       {make_cp2(1), make_cp2(4), make_ball(-1), make_ball(-4)}) {
    const double k = m.info.param;
    const double budget = 1e-7 * std::max(1.0, k * k);
    for (const auto& x : sample_points(m.info, 20)) {
      const auto sc = scalar_chain(k, decompose(compute_curvature(m, x)));
      const double r = std::max(
          {sc.sc_residual, sc.sg_residual, sc.sstar_residual, sc.rf_residual});
      worst_ratio = std::max(worst_ratio, r / budget);
    }
  }
  Outcome o;
  o.pass = worst_ratio < 1;
  o.detail = "worst residual at " + fmt(worst_ratio) +
             " of the 1e-7*max(1,k^2) budget";
  return o;
}

// ===== criterion 7: almost Kaehler gap and commutator-trace norms =====

Outcome criterion7() {
  const Model m = make_kt();
  double worst = 0;
  for (const auto& x : sample_points(m.info, 50)) {
    const auto c = compute_curvature(m, x);
    const auto g = gap_report(c, decompose(c));
    worst = std::max({worst, g.gap_residual, g.beta_tilde_residual,
                      g.beta0_residual, g.schain_c_residual,
                      g.schain_star_residual});
  }
  Outcome o;
  o.pass = worst < 1e-10;
  o.detail = "max residual " + fmt(worst) + ", budget 1e-10";
  return o;
}

// ===== criterion 8: index integrals from both connections =====

Outcome criterion8() {
  Outcome o;
  o.pass = true;
  std::ostringstream d;

  const auto cp2 = index_report(make_cp2(1));
  o.pass = o.pass && std::abs(cp2.sigma_lc - 1) < 1e-3 &&
           std::abs(cp2.chi_lc - 3) < 1e-3 && std::abs(cp2.sigma_h - 1) < 1e-3 &&
           std::abs(cp2.chi_h - 3) < 1e-3 && cp2.cross_sigma < 1e-6 &&
           cp2.cross_chi < 1e-6;
  d << "cp2 (sigma " << fmt(cp2.sigma_lc) << ", chi " << fmt(cp2.chi_lc) << ")";

  for (const Model& m : {make_torus(), make_kt()}) {
    const auto idx = index_report(m, 6);
    o.pass = o.pass && std::abs(idx.sigma_lc) < 1e-6 &&
             std::abs(idx.chi_lc) < 1e-6 && std::abs(idx.sigma_h) < 1e-6 &&
             std::abs(idx.chi_h) < 1e-6 && idx.cross_sigma < 1e-6 &&
             idx.cross_chi < 1e-6;
    d << ", " << m.info.name << " (sigma " << fmt(idx.sigma_lc) << ", chi "
      << fmt(idx.chi_lc) << ")";
  }
  o.detail = d.str();
  return o;
}

// ===== criterion 9: constant-H integral identities =====

Outcome criterion9() {
  Outcome o;
  o.pass = true;
  double worst = 0, worst_nice = 0;
  for (const double k : {1.0, 4.0}) {
    const Model m = make_cp2(k);
    const auto idx = index_report(m);
    const auto rep = identity_report(m, idx.sigma_lc, idx.chi_lc);
    worst = std::max({worst, rep.chi_residual, rep.sigma_residual,
                      rep.mixed_residual, rep.quartic_residual});
    // Equality case of 3 sigma >= chi on this Kaehler-Einstein model.
    worst_nice =
        std::max(worst_nice, std::abs(3 * idx.sigma_lc - idx.chi_lc));
  }
  o.pass = worst < 1e-5 && worst_nice < 1e-3;
  o.detail = "max identity residual " + fmt(worst) + " (budget 1e-5), |3 sigma - chi| " +
             fmt(worst_nice) + " (budget 1e-3)";
  return o;
}

// ===== criterion 10: balance and the naive v = s_g/12 rule everywhere =====

Outcome criterion10() {
  double worst_balance = 0;
  double worst_defect = 0;
  std::string defect_models;
  const std::vector<Model> models = {make_torus(),  make_cp2(1),
                                     make_cp2(4),   make_ball(-1),
                                     make_ball(-4), make_kt(),
                                     make_s2xs2(1.0, std::sqrt(2.0))};
  for (const Model& m : models) {
    double model_defect = 0;
    for (const auto& x : sample_points(m.info, 12)) {
      const auto d = decompose(compute_curvature(m, x));
      worst_balance = std::max(worst_balance, d.balance_residual);
      model_defect = std::max(model_defect, std::abs(d.v_defect));
    }
    worst_defect = std::max(worst_defect, model_defect);
    if (model_defect >= 1e-9) {
      if (!defect_models.empty()) defect_models += ", ";
      defect_models += m.info.name + " defect " + fmt(model_defect);
    }
  }
  Outcome o;
  o.pass = worst_balance < 1e-9 && worst_defect < 1e-9;
  o.detail = "balance " + fmt(worst_balance) + " (budget 1e-9, holds)";
  if (!defect_models.empty())
    o.detail += "; v = s_g/12 fails on " + defect_models +
                " - the corrected identity v = s_g/12 - W-(0,0)/2 holds at "
                "every point (see decomposition tests)";
  return o;
}

struct Entry {
  int id;
  const char* title;
  double limit_s;
  Outcome (*fn)();
};

const Entry kEntries[] = {
    {1, "flat-torus nullity", 1, criterion1},
    {2, "constant-H models: constancy, self-duality, Ricci duality", 30,
     criterion2},
    {3, "nilmanifold breaks constancy and Ricci duality", 10, criterion3},
    {4, "exact equivalence sweep (grid + 10^4 random)", 60, criterion4},
    {5, "coefficient groups match the direct predicate (10^4)", 60,
     criterion5},
    {6, "scalar-curvature chain on constant-H families", 10, criterion6},
    {7, "almost Kaehler gap and commutator-trace norms", 10, criterion7},
    {8, "index integrals from both connections", 60, criterion8},
    {9, "constant-H integral identities", 30, criterion9},
    {10, "balance and naive v-rule at every sampled point", 10, criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }

  bool any_fail = false;
  for (const auto& e : kEntries) {
    if (only != 0 && e.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = e.fn();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_time = dt <= e.limit_s;
    const bool pass = o.pass && in_time;
    std::printf("[%s] criterion %d: %s (%.2fs, limit %.0fs)%s%s%s\n",
                pass ? "PASS" : "FAIL", e.id, e.title, dt, e.limit_s,
                o.detail.empty() ? "" : " - ", o.detail.c_str(),
                in_time ? "" : " [time limit exceeded]");
    any_fail = any_fail || !pass;
  }
  return any_fail ? 1 : 0;
}
