#pragma once

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlab/chern_weil.hpp"
#include "curvlab/engine.hpp"
#include "curvlab/oracle.hpp"

#include "json.hpp"

// Machine-readable report rows. A row is one flat ordered JSON object.
// The JSON writer emits one object per line (NDJSON); the CSV writer emits a
// header row and then one line per row, re-emitting the header whenever the
// row shape changes. Non-string CSV cells reuse the exact JSON literal text,
// so the two formats carry identical numeric payloads field for field and
// doubles round-trip losslessly in both.

namespace curvlab {

inline constexpr int kSchemaVersion = 1;

enum class ReportFormat { json, csv };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown format '" + s +
                              "' (expected json | csv)");
}

class ReportWriter {
 public:
  ReportWriter(std::ostream& os, ReportFormat fmt) : os_(os), fmt_(fmt) {}

  void row(const nlohmann::ordered_json& obj) {
    if (fmt_ == ReportFormat::json) {
      os_ << obj.dump() << "\n";
      return;
    }
    std::vector<std::string> keys;
    keys.reserve(obj.size());
    for (auto it = obj.begin(); it != obj.end(); ++it) keys.push_back(it.key());
    if (keys != header_) {
      if (!header_.empty()) os_ << "\n";
      header_ = keys;
      for (std::size_t i = 0; i < keys.size(); ++i)
        os_ << (i ? "," : "") << keys[i];
      os_ << "\n";
    }
    bool first = true;
    for (const auto& k : keys) {
      const auto& v = obj.at(k);
      if (!first) os_ << ",";
      first = false;
      if (v.is_string())
        os_ << v.get<std::string>();  // report strings never contain commas
      else
        os_ << v.dump();
    }
    os_ << "\n";
  }

 private:
  std::ostream& os_;
  ReportFormat fmt_;
  std::vector<std::string> header_;
};

// ===== row builders =====

namespace detail {

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.numerator() << "/" << r.denominator();
  return os.str();
}

inline void put_grat(nlohmann::ordered_json& row, const std::string& name,
                     const GRat& z) {
  row[name + "_re"] = rat_str(z.re);
  row[name + "_im"] = rat_str(z.im);
}

inline void put_complex(nlohmann::ordered_json& row, const std::string& name,
                        const Complex& z) {
  row[name + "_re"] = z.real();
  row[name + "_im"] = z.imag();
}

}  // namespace detail

inline nlohmann::ordered_json point_row(const PointReport& r,
                                        const ModelInfo& info,
                                        const AnalysisOptions& opt) {
  nlohmann::ordered_json row;
  row["schema_version"] = kSchemaVersion;
  row["type"] = "point";
  row["model"] = info.name;
  row["param"] = info.param;
  for (int i = 0; i < 4; ++i) row["x" + std::to_string(i + 1)] = r.x[i];
  row["tol"] = opt.tol;
  row["structural_tol"] = info.structural_tol;

  row["metric_symmetry"] = r.metric_symmetry;
  row["j_squared"] = r.j_squared;
  row["compatibility"] = r.compatibility;
  row["df_norm"] = r.df_norm;
  row["compat_residual"] = r.compat_residual;
  row["nabla_j_residual"] = r.nabla_j_residual;
  row["u2_residual"] = r.u2_residual;
  row["gauge_residual"] = r.gauge_residual;
  row["conj_residual"] = r.conj_residual;
  row["trace_residual"] = r.trace_residual;
  row["balance_residual"] = r.balance_residual;
  row["v_imag"] = r.v_imag;
  row["v_corrected"] = r.v_corrected;
  row["route_mismatch"] = r.route_mismatch;
  row["imag_residual"] = r.imag_residual;
  row["structural_scale"] = r.structural_scale;
  row["structural_ok"] = r.structural_ok;

  row["norm_a_sq"] = r.norm_a_sq;
  row["s_g"] = r.s_g;
  row["s_star"] = r.s_star;
  row["s_c"] = r.s_c;
  row["s_h"] = r.s_h;
  row["d_trace"] = r.d_trace;
  row["c_trace"] = r.c_trace;

  row["norm_w_plus_sq"] = r.norm_w_plus_sq;
  row["norm_w_minus_sq"] = r.norm_w_minus_sq;
  row["norm_r0_sq"] = r.norm_r0_sq;
  row["norm_wf_sq"] = r.norm_wf_sq;
  row["norm_w00_sq"] = r.norm_w00_sq;
  row["norm_rf_sq"] = r.norm_rf_sq;
  row["norm_r00_sq"] = r.norm_r00_sq;
  row["w_minus_00"] = r.w_minus_00;

  detail::put_complex(row, "k", r.block.k);
  detail::put_complex(row, "l", r.block.l);
  detail::put_complex(row, "u", r.block.u);
  detail::put_complex(row, "w", r.block.w);
  detail::put_complex(row, "v", r.block.v);
  detail::put_complex(row, "x", r.block.x);
  detail::put_complex(row, "a", r.block.a);
  detail::put_complex(row, "b", r.block.b);
  detail::put_complex(row, "ap", r.block.ap);
  detail::put_complex(row, "bp", r.block.bp);

  row["star_residual"] = r.star_residual;
  row["v_defect"] = r.v_defect;
  row["direct"] = r.direct;
  row["reduced"] = r.reduced;
  row["dual"] = r.dual;
  row["coeffs"] = r.coeffs;
  row["predicates_consistent"] = r.predicates_consistent;

  row["h_min"] = r.h_min;
  row["h_max"] = r.h_max;
  row["h_mean"] = r.h_mean;
  row["h_spread_rel"] = r.h_spread_rel;
  row["h_constant"] = r.h_constant;

  row["gap_residual"] = r.gap_residual;
  row["beta_tilde_residual"] = r.beta_tilde_residual;
  row["beta0_residual"] = r.beta0_residual;
  row["schain_c_residual"] = r.schain_c_residual;
  row["schain_star_residual"] = r.schain_star_residual;

  row["p1_lc"] = r.p1_lc;
  row["pf_lc"] = r.pf_lc;
  row["p1_h"] = r.p1_h;
  row["pf_h"] = r.pf_h;
  return row;
}

inline nlohmann::ordered_json index_row(const IndexReport& r,
                                        const ModelInfo& info, int quad_order,
                                        double tol) {
  nlohmann::ordered_json row;
  row["schema_version"] = kSchemaVersion;
  row["type"] = "index";
  row["model"] = info.name;
  row["param"] = info.param;
  row["quad_order"] = quad_order;
  row["tol"] = tol;
  row["sigma_lc"] = r.sigma_lc;
  row["chi_lc"] = r.chi_lc;
  row["sigma_h"] = r.sigma_h;
  row["chi_h"] = r.chi_h;
  row["cross_sigma"] = r.cross_sigma;
  row["cross_chi"] = r.cross_chi;
  row["has_topology"] = r.has_topology;
  row["sigma_expected"] = r.sigma_expected;
  row["chi_expected"] = r.chi_expected;
  row["sigma_error"] = r.has_topology ? std::abs(r.sigma_lc - r.sigma_expected)
                                      : 0.0;
  row["chi_error"] =
      r.has_topology ? std::abs(r.chi_lc - r.chi_expected) : 0.0;
  row["pass"] = r.cross_sigma <= tol && r.cross_chi <= tol;
  return row;
}

// Verdict rows for the verify command. mode is "le" (observed <= budget) or
// "ge" (observed >= budget); boolean checks use observed in {0, 1}.
inline nlohmann::ordered_json check_row(const std::string& model,
                                        const std::string& name,
                                        double observed, double budget,
                                        const std::string& mode, bool pass) {
  nlohmann::ordered_json row;
  row["schema_version"] = kSchemaVersion;
  row["type"] = "check";
  row["model"] = model;
  row["name"] = name;
  row["observed"] = observed;
  row["budget"] = budget;
  row["mode"] = mode;
  row["pass"] = pass;
  return row;
}

inline nlohmann::ordered_json fuzz_case_row(long long index,
                                            const RatBlock& m,
                                            const OracleVerdict& v) {
  nlohmann::ordered_json row;
  row["schema_version"] = kSchemaVersion;
  row["type"] = "fuzz_case";
  row["index"] = index;
  detail::put_grat(row, "k", m.k);
  detail::put_grat(row, "l", m.l);
  detail::put_grat(row, "u", m.u);
  detail::put_grat(row, "w", m.w);
  detail::put_grat(row, "v", m.v);
  detail::put_grat(row, "x", m.x);
  detail::put_grat(row, "a", m.a);
  detail::put_grat(row, "b", m.b);
  detail::put_grat(row, "ap", m.ap);
  detail::put_grat(row, "bp", m.bp);
  row["direct"] = v.direct;
  row["reduced"] = v.reduced;
  row["dual"] = v.dual;
  row["coeffs"] = v.coeffs;
  row["constraints"] = v.constraints;
  row["consistent"] = v.consistent;
  return row;
}

inline nlohmann::ordered_json fuzz_summary_row(const SweepResult& r,
                                               std::uint64_t seed,
                                               bool with_grid,
                                               const SweepResult& grid) {
  nlohmann::ordered_json row;
  row["schema_version"] = kSchemaVersion;
  row["type"] = "fuzz_summary";
  row["seed"] = seed;
  row["cases"] = r.cases;
  row["n_direct"] = r.n_direct;
  row["n_reduced"] = r.n_reduced;
  row["n_dual"] = r.n_dual;
  row["n_coeffs"] = r.n_coeffs;
  row["constraint_violations"] = r.constraint_violations;
  row["disagreements"] = r.disagreements;
  row["grid_cases"] = with_grid ? grid.cases : 0;
  row["grid_disagreements"] = with_grid ? grid.disagreements : 0;
  row["pass"] = r.disagreements == 0 && r.constraint_violations == 0 &&
                (!with_grid ||
                 (grid.disagreements == 0 && grid.constraint_violations == 0));
  return row;
}

}  // namespace curvlab
