#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "curvlab/engine.hpp"
#include "curvlab/report.hpp"

// Command-line driver. Four subcommands over one option vocabulary:
//
//   analyze   per-point curvature reports for a model
//   index     characteristic-number integrals for a closed model
//   verify    structured pass/fail table of the identity suite for a model
//   fuzz      exact-arithmetic equivalence sweeps on random rational blocks
//
// Output is NDJSON (default) or CSV with a header row; both carry the same
// payload field for field. Exit codes: 0 all checks passed, 1 a check or
// invariant failed, 2 configuration/model errors (bad flags, malformed model
// file, out-of-domain point, structure axiom failure).

namespace curvlab::cli {

struct Options {
  std::string model = "cp2";
  std::string user;
  double k = 0;  // 0 keeps the per-model default parameter
  std::vector<std::string> points;
  int n_samples = 0;   // 0: per-command default
  double tol = -1;     // negative: per-command default
  int quad_order = 16;
  std::uint64_t seed = 1;
  std::string format = "json";
  int threads = 0;  // 0: CURVLAB_THREADS, then hardware
  std::string out;
  long long n_cases = 10000;
  bool grid = false;
};

namespace detail {

inline Model resolve_model(const Options& o) {
  if (!o.user.empty()) return load_model_file(o.user);
  return make_builtin(o.model, o.k);
}

inline Vec4d parse_point(const std::string& text) {
  Vec4d x{};
  std::stringstream ss(text);
  std::string cell;
  int i = 0;
  while (std::getline(ss, cell, ',')) {
    if (i >= 4) throw std::invalid_argument("point '" + text + "' has more than 4 coordinates");
    std::size_t used = 0;
    x[i] = std::stod(cell, &used);
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size())
      throw std::invalid_argument("bad coordinate '" + cell + "' in point '" + text + "'");
    ++i;
  }
  if (i != 4) throw std::invalid_argument("point '" + text + "' needs 4 comma-separated coordinates");
  return x;
}

// --points accepts repeated flags and semicolon-joined lists.
inline std::vector<Vec4d> parse_points(const std::vector<std::string>& raw) {
  std::vector<Vec4d> pts;
  for (const auto& joined : raw) {
    std::stringstream ss(joined);
    std::string one;
    while (std::getline(ss, one, ';'))
      if (!one.empty()) pts.push_back(parse_point(one));
  }
  return pts;
}

inline void check_in_domain(const ModelInfo& info, const Vec4d& x) {
  for (int i = 0; i < 4; ++i)
    if (!(x[i] >= info.lo[i] && x[i] <= info.hi[i])) {
      std::ostringstream msg;
      msg << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
          << ") leaves the domain of model '" << info.name << "' on axis "
          << i + 1 << " [" << info.lo[i] << ", " << info.hi[i] << "]";
      throw std::runtime_error(msg.str());
    }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Worst identity residual of a point report; structural_ok compares this
// against max(1e-8, structural_tol) * structural_scale.
inline double worst_identity_residual(const PointReport& r) {
  return std::max({r.metric_symmetry, r.j_squared, r.compatibility,
                   r.compat_residual, r.nabla_j_residual, r.u2_residual,
                   r.gauge_residual, r.conj_residual, r.trace_residual,
                   r.balance_residual, r.v_imag, std::abs(r.v_corrected),
                   r.route_mismatch, r.imag_residual});
}

// ===== subcommand bodies =====

inline int cmd_analyze(const Options& o) {
  const Model model = resolve_model(o);
  AnalysisOptions opt;
  opt.n_samples = o.n_samples > 0 ? o.n_samples : 8;
  opt.tol = o.tol >= 0 ? o.tol : 1e-7;
  opt.threads = resolve_threads(o.threads);

  std::vector<Vec4d> pts = parse_points(o.points);
  if (pts.empty()) pts = sample_points(model.info, opt.n_samples);
  for (const auto& x : pts) check_in_domain(model.info, x);

  const auto reports = analyze_model(model, pts, opt);

  Output sink(o.out);
  ReportWriter w(sink.stream(), parse_format(o.format));
  bool ok = true;
  for (const auto& r : reports) {
    w.row(point_row(r, model.info, opt));
    ok = ok && r.structural_ok;
  }
  return ok ? 0 : 1;
}

inline int cmd_index(const Options& o) {
  const Model model = resolve_model(o);
  if (!model.info.closed)
    throw std::runtime_error("model '" + model.info.name +
                             "' is not closed; index integrals need a closed model");
  const double tol = o.tol >= 0 ? o.tol : 1e-6;
  const auto rep = index_report(model, o.quad_order, resolve_threads(o.threads));

  Output sink(o.out);
  ReportWriter w(sink.stream(), parse_format(o.format));
  const auto row = index_row(rep, model.info, o.quad_order, tol);
  w.row(row);
  return row.at("pass").get<bool>() ? 0 : 1;
}

inline int cmd_fuzz(const Options& o) {
  if (o.n_cases < 1) throw std::invalid_argument("fuzz needs --n >= 1");

  Output sink(o.out);
  ReportWriter w(sink.stream(), parse_format(o.format));

  // Small runs print every case; any inconsistent case is always printed as
  // a counterexample no matter the run size.
  const bool dump_all = o.n_cases <= 8;
  const auto sweep = run_random_sweep(
      o.n_cases, o.seed,
      [&](long long i, const RatBlock& m, const OracleVerdict& v) {
        if (dump_all || !v.consistent) w.row(fuzz_case_row(i, m, v));
      });

  SweepResult grid;
  if (o.grid) grid = run_grid_sweep();
  const auto row = fuzz_summary_row(sweep, o.seed, o.grid, grid);
  w.row(row);
  return row.at("pass").get<bool>() ? 0 : 1;
}

inline int cmd_verify(const Options& o) {
  const Model model = resolve_model(o);
  const ModelInfo& info = model.info;
  AnalysisOptions opt;
  opt.n_samples = o.n_samples > 0 ? o.n_samples : 16;
  opt.tol = o.tol >= 0 ? o.tol : 1e-8;
  opt.threads = resolve_threads(o.threads);

  const auto pts = sample_points(info, opt.n_samples);
  const auto reports = analyze_model(model, pts, opt);

  Output sink(o.out);
  ReportWriter w(sink.stream(), parse_format(o.format));
  int failed = 0;
  const auto check = [&](const std::string& name, double observed,
                         double budget, const std::string& mode) {
    const bool pass = mode == "ge" ? observed >= budget : observed <= budget;
    failed += !pass;
    w.row(check_row(info.name, name, observed, budget, mode, pass));
  };

  const auto fold_max = [&](auto f) {
    double m = -1e300;
    for (const auto& r : reports) m = std::max(m, f(r));
    return m;
  };
  const auto fold_min = [&](auto f) {
    double m = 1e300;
    for (const auto& r : reports) m = std::min(m, f(r));
    return m;
  };

  // Identities every almost Hermitian model must satisfy pointwise.
  check("structure_identities",
        fold_max([](const PointReport& r) {
          return worst_identity_residual(r) / r.structural_scale;
        }),
        std::max(1e-8, info.structural_tol), "le");
  check("predicate_consistency",
        fold_max([](const PointReport& r) {
          return r.predicates_consistent ? 0.0 : 1.0;
        }),
        0, "le");

  if (info.name == "torus") {
    check("flat_nullity", fold_max([](const PointReport& r) {
            return std::max({std::abs(r.s_g), std::abs(r.s_star),
                             std::abs(r.s_c), r.norm_a_sq, r.norm_w_plus_sq,
                             r.norm_w_minus_sq, r.norm_r0_sq,
                             std::abs(r.h_min), std::abs(r.h_max),
                             std::abs(r.p1_lc), std::abs(r.pf_lc),
                             std::abs(r.p1_h), std::abs(r.pf_h),
                             r.star_residual});
          }),
          1e-12, "le");
  }

  if (info.name == "cp2" || info.name == "ball") {
    const double kk = info.param;
    check("hsc_constant",
          fold_max([](const PointReport& r) { return r.h_spread_rel; }),
          opt.tol, "le");
    check("w_minus_norm", fold_max([](const PointReport& r) {
            return std::sqrt(r.norm_w_minus_sq);
          }),
          1e-8, "le");
    check("star_duality",
          fold_max([](const PointReport& r) { return r.star_residual; }),
          1e-8, "le");
    check("block_predicates", fold_max([](const PointReport& r) {
            return (r.direct && r.reduced && r.dual && r.coeffs) ? 0.0 : 1.0;
          }),
          0, "le");
    // Scalar chain against the model's constant H = k.
    double chain = -1e300;
    for (const auto& x : pts) {
      const auto c = compute_curvature(model, x);
      const auto sc = scalar_chain(kk, decompose(c));
      chain = std::max({chain, sc.sc_residual, sc.sg_residual,
                        sc.sstar_residual, sc.rf_residual});
    }
    check("scalar_chain", chain, 1e-7 * std::max(1.0, kk * kk), "le");
  }

  if (info.name == "kt") {
    check("constancy_fails", fold_max([](const PointReport& r) {
            return r.h_constant ? 1.0 : 0.0;
          }),
          0, "le");
    check("star_duality_fails",
          fold_min([](const PointReport& r) { return r.star_residual; }),
          1e-3, "ge");
    check("torsion_positive",
          fold_min([](const PointReport& r) { return r.norm_a_sq; }), 1e-3,
          "ge");
    check("ak_gap_relations", fold_max([](const PointReport& r) {
            return std::max({r.gap_residual, r.beta_tilde_residual,
                             r.beta0_residual, r.schain_c_residual,
                             r.schain_star_residual});
          }),
          1e-10, "le");
    check("v_defect_nonzero",
          fold_min([](const PointReport& r) { return std::abs(r.v_defect); }),
          1e-3, "ge");
  }

  if (info.name == "s2xs2") {
    check("dual_fails",
          fold_min([](const PointReport& r) { return r.star_residual; }),
          1e-3, "ge");
    check("v_defect_nonzero",
          fold_min([](const PointReport& r) { return std::abs(r.v_defect); }),
          1e-3, "ge");
  }

  if (info.closed && info.has_topology) {
    const auto idx = index_report(model, o.quad_order, opt.threads);
    // Zero expectations get the tight quadrature budget, nonzero ones the
    // headline 1e-3; cross-connection agreement is format-independent.
    const auto idx_budget = [](double expected) {
      return expected == 0 ? 1e-6 : 1e-3;
    };
    check("index_sigma", std::abs(idx.sigma_lc - idx.sigma_expected),
          idx_budget(idx.sigma_expected), "le");
    check("index_chi", std::abs(idx.chi_lc - idx.chi_expected),
          idx_budget(idx.chi_expected), "le");
    check("index_cross", std::max(idx.cross_sigma, idx.cross_chi), 1e-6,
          "le");
  }

  nlohmann::ordered_json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["type"] = "verify_summary";
  summary["model"] = info.name;
  summary["points"] = static_cast<int>(pts.size());
  summary["failed"] = failed;
  summary["pass"] = failed == 0;
  w.row(summary);
  return failed == 0 ? 0 : 1;
}

}  // namespace detail

inline int run(int argc, char** argv) {
  CLI::App app{
      "curvlab: curvature identities and index integrals for almost "
      "Hermitian 4-manifold charts"};
  app.require_subcommand(1);

  Options o;

  const auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("model_name", o.model,
                    "built-in model (positional shorthand for --model)");
    cmd->add_option("--model", o.model,
                    "built-in model: torus | kt | cp2 | ball | s2xs2")
        ->capture_default_str();
    cmd->add_option("--user", o.user, "path of a user model JSON file");
    cmd->add_option("--k", o.k,
                    "sectional parameter for cp2 (k > 0) and ball (k < 0); "
                    "0 keeps the model default");
  };
  const auto add_run_opts = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "check tolerance (negative: per-command default)");
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("--threads", o.threads,
                    "worker threads (0: CURVLAB_THREADS, then hardware)");
  };
  const auto add_output_opts = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "write reports to a file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "per-point curvature reports (one row per point)");
  add_model_opts(analyze);
  analyze->add_option("--points", o.points,
                      "explicit points 'x1,x2,x3,x4', repeatable or "
                      "semicolon-joined; default: sampled points");
  analyze->add_option("--n-samples", o.n_samples,
                      "number of sampled points when --points is absent "
                      "(default 8)");
  add_run_opts(analyze);
  add_output_opts(analyze);

  CLI::App* index = app.add_subcommand(
      "index", "integrate characteristic densities over a closed model");
  add_model_opts(index);
  index->add_option("--quad-order", o.quad_order,
                    "Gauss-Legendre points per axis")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  add_run_opts(index);
  add_output_opts(index);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the identity check table for a model");
  add_model_opts(verify);
  verify->add_option("--n-samples", o.n_samples,
                     "sampled points for the pointwise checks (default 16)");
  verify->add_option("--quad-order", o.quad_order,
                     "Gauss-Legendre points per axis for index checks")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  add_run_opts(verify);
  add_output_opts(verify);

  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "exact equivalence sweep over random rational blocks");
  fuzz->add_option("--n,--n-samples", o.n_cases, "number of random cases")
      ->capture_default_str();
  fuzz->add_flag("--grid", o.grid,
                 "also run the exhaustive small-coefficient grid");
  add_run_opts(fuzz);
  add_output_opts(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze) return detail::cmd_analyze(o);
    if (*index) return detail::cmd_index(o);
    if (*verify) return detail::cmd_verify(o);
    if (*fuzz) return detail::cmd_fuzz(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace curvlab::cli
