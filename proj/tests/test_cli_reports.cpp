#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "curvlab/cli.hpp"

#include "json.hpp"

using json = nlohmann::ordered_json;  // keeps report field order on re-parse

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "curvlab");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());
  return curvlab::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> ndjson_rows(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<json> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(json::parse(line));
  return rows;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

std::string data_dir() {
  const char* d = std::getenv("CURVLAB_DATA_DIR");
  REQUIRE(d != nullptr);
  return d;
}

}  // namespace

TEST_CASE("analyze reports zeros on the flat torus and exits cleanly") {
  const std::string out = temp_path("cli_torus.ndjson");
  REQUIRE(run_cli({"analyze", "torus", "--n-samples", "3", "--out", out}) == 0);
  const auto rows = ndjson_rows(out);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.at("schema_version") == 1);
    CHECK(r.at("type") == "point");
    CHECK(r.at("model") == "torus");
    CHECK(r.at("structural_ok") == true);
    CHECK(r.at("s_g").get<double>() == 0.0);
    CHECK(r.at("norm_a_sq").get<double>() == 0.0);
    CHECK(r.at("pf_lc").get<double>() == 0.0);
  }
}

TEST_CASE("analyze at the projective-plane origin sees the Kaehler profile") {
  const std::string out = temp_path("cli_cp2_origin.ndjson");
  REQUIRE(run_cli({"analyze", "--model", "cp2", "--k", "4", "--points",
                   "0,0,0,0", "--out", out}) == 0);
  const auto rows = ndjson_rows(out);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(std::abs(r.at("h_mean").get<double>() - 4.0) < 1e-9);
  CHECK(r.at("h_constant") == true);
  CHECK(std::abs(r.at("gap_residual").get<double>()) < 1e-11);
  CHECK(r.at("norm_w_minus_sq").get<double>() < 1e-18);
  CHECK(r.at("norm_a_sq").get<double>() < 1e-18);
  CHECK(r.at("direct") == true);
  CHECK(r.at("coeffs") == true);
}

TEST_CASE("analyze on the nilmanifold reports torsion and broken duality") {
  const std::string out = temp_path("cli_kt.ndjson");
  REQUIRE(run_cli({"analyze", "kt", "--n-samples", "4", "--out", out}) == 0);
  for (const auto& r : ndjson_rows(out)) {
    CHECK(r.at("norm_a_sq").get<double>() > 0.2);
    CHECK(r.at("star_residual").get<double>() > 1e-3);
    CHECK(r.at("direct") == false);
    CHECK(r.at("h_constant") == false);
    CHECK(r.at("structural_ok") == true);
  }
}

TEST_CASE("same command is byte-identical across runs and thread counts") {
  const std::string a = temp_path("cli_det_a.ndjson");
  const std::string b = temp_path("cli_det_b.ndjson");
  REQUIRE(run_cli({"analyze", "cp2", "--k", "2", "--n-samples", "5",
                   "--threads", "1", "--out", a}) == 0);
  REQUIRE(run_cli({"analyze", "cp2", "--k", "2", "--n-samples", "5",
                   "--threads", "4", "--out", b}) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string f1 = temp_path("cli_fuzz_a.ndjson");
  const std::string f2 = temp_path("cli_fuzz_b.ndjson");
  REQUIRE(run_cli({"fuzz", "--n", "200", "--seed", "11", "--out", f1}) == 0);
  REQUIRE(run_cli({"fuzz", "--n", "200", "--seed", "11", "--out", f2}) == 0);
  CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("CSV and JSON carry the same payload field for field") {
  const std::string ja = temp_path("cli_par.ndjson");
  const std::string ca = temp_path("cli_par.csv");
  REQUIRE(run_cli({"analyze", "kt", "--n-samples", "2", "--format", "json",
                   "--out", ja}) == 0);
  REQUIRE(run_cli({"analyze", "kt", "--n-samples", "2", "--format", "csv",
                   "--out", ca}) == 0);

  const auto rows = ndjson_rows(ja);
  std::ifstream csv(ca);
  std::string line;
  REQUIRE(std::getline(csv, line));
  const auto header = split_csv(line);
  for (const auto& row : rows) {
    REQUIRE(std::getline(csv, line));
    const auto cells = split_csv(line);
    REQUIRE(cells.size() == header.size());
    REQUIRE(header.size() == row.size());
    std::size_t i = 0;
    for (auto it = row.begin(); it != row.end(); ++it, ++i) {
      CHECK(header[i] == it.key());
      const std::string expect = it.value().is_string()
                                     ? it.value().get<std::string>()
                                     : it.value().dump();
      CHECK(cells[i] == expect);
    }
  }
}

TEST_CASE("index command checks closedness and hits the known numbers") {
  const std::string out = temp_path("cli_index.ndjson");
  REQUIRE(run_cli({"index", "--model", "cp2", "--k", "1", "--out", out}) == 0);
  auto rows = ndjson_rows(out);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0].at("sigma_lc").get<double>() - 1.0) < 1e-3);
  CHECK(std::abs(rows[0].at("chi_lc").get<double>() - 3.0) < 1e-3);
  CHECK(rows[0].at("cross_sigma").get<double>() < 1e-6);
  CHECK(rows[0].at("pass") == true);

  REQUIRE(run_cli({"index", "kt", "--quad-order", "6", "--out", out}) == 0);
  rows = ndjson_rows(out);
  CHECK(std::abs(rows[0].at("sigma_lc").get<double>()) < 1e-6);
  CHECK(std::abs(rows[0].at("chi_h").get<double>()) < 1e-6);

  // Non-closed models are a configuration error.
  CHECK(run_cli({"index", "--model", "ball", "--k", "-1"}) == 2);
}

TEST_CASE("verify passes on builtin models and fails loudly on bad input") {
  const std::string out = temp_path("cli_verify.ndjson");
  for (const std::string m : {"torus", "kt", "s2xs2"}) {
    REQUIRE(run_cli({"verify", m, "--n-samples", "6", "--quad-order", "8",
                     "--out", out}) == 0);
    const auto rows = ndjson_rows(out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows.back().at("type") == "verify_summary");
    CHECK(rows.back().at("pass") == true);
    CHECK(rows.back().at("failed") == 0);
  }

  // Malformed or axiom-violating user models exit with the config code.
  CHECK(run_cli({"verify", "--user", data_dir() + "/models/broken_j.json"}) ==
        2);
  CHECK(run_cli({"verify", "--user", "/nonexistent/nope.json"}) == 2);

  // A valid user model goes through the same table.
  REQUIRE(run_cli({"verify", "--user",
                   data_dir() + "/models/stretched_torus.json", "--n-samples",
                   "4", "--quad-order", "4", "--out", out}) == 0);
  CHECK(ndjson_rows(out).back().at("pass") == true);
}

TEST_CASE("fuzz prints cases for tiny runs and a clean summary") {
  const std::string out = temp_path("cli_fuzz_case.ndjson");
  REQUIRE(run_cli({"fuzz", "--n", "1", "--seed", "0", "--out", out}) == 0);
  auto rows = ndjson_rows(out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("type") == "fuzz_case");
  CHECK(rows[0].at("consistent") == true);
  CHECK(rows[1].at("type") == "fuzz_summary");
  CHECK(rows[1].at("cases") == 1);
  CHECK(rows[1].at("disagreements") == 0);

  REQUIRE(run_cli({"fuzz", "--n", "100", "--seed", "3", "--grid", "--out",
                   out}) == 0);
  rows = ndjson_rows(out);
  REQUIRE(rows.size() == 1);  // big runs only print the summary
  CHECK(rows[0].at("cases") == 100);
  CHECK(rows[0].at("grid_cases") == 3249);
  CHECK(rows[0].at("grid_disagreements") == 0);
  CHECK(rows[0].at("pass") == true);
}

TEST_CASE("out-of-domain points are rejected as configuration errors") {
  CHECK(run_cli({"analyze", "torus", "--points", "2,0,0,0"}) == 2);
  CHECK(run_cli({"analyze", "torus", "--points", "0.5,0.5"}) == 2);
}
