#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(POLYLAB_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t nread;
  while ((nread = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, nread);
  int rc = pclose(p);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// split a CSV body into cell rows (no quoting in any of our outputs)
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

// required-key check against one of the shipped response schemas
void check_schema(const json& doc, const std::string& schema_name) {
  json schema =
      json::parse(read_file(std::string(POLYLAB_SOURCE_DIR) +
                            "/docs/schemas/" + schema_name + ".json"));
  const json& props = schema.contains("properties")
                          ? schema["properties"]
                          : schema["definitions"]["model"]["properties"];
  const json& required = schema.contains("required")
                             ? schema["required"]
                             : schema["definitions"]["model"]["required"];
  for (const auto& key : required) {
    CAPTURE(key.get<std::string>());
    REQUIRE(doc.contains(key.get<std::string>()));
    const auto& spec = props[key.get<std::string>()];
    const auto& val = doc[key.get<std::string>()];
    if (spec["type"] == "number")
      CHECK(val.is_number());
    else if (spec["type"] == "string")
      CHECK(val.is_string());
    else if (spec["type"] == "integer")
      CHECK(val.is_number_integer());
    else if (spec["type"] == "boolean")
      CHECK(val.is_boolean());
  }
}

}  // namespace

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("table2 --help").code == 0);
  CHECK(run_cli("no_such_command").code == 2);
  CHECK(run_cli("profile --n abc").code == 2);        // unparsable value
  CHECK(run_cli("table2 --format xml").code == 2);    // not in the choice set
  CHECK(run_cli("profile --n 7").code == 3);          // domain error
  CHECK(run_cli("noether --n 1").code == 3);  // undefined weight
  auto err = run_cli("profile --n 7", true);
  CHECK(err.out.find("error:") != std::string::npos);
}

TEST_CASE("cli: table of surface constants matches the golden copy") {
  auto res = run_cli("table2");
  CHECK(res.code == 0);
  std::string golden =
      read_file(std::string(POLYLAB_SOURCE_DIR) + "/tests/golden/table2.csv");
  CHECK(res.out == golden);
  // byte-for-byte deterministic
  CHECK(run_cli("table2").out == res.out);
}

TEST_CASE("cli: profile output shape and trivial density column") {
  auto res = run_cli("profile --n 0");
  CHECK(res.code == 0);
  auto rows = csv_rows(res.out);
  REQUIRE(rows.size() > 10);
  REQUIRE(rows[0].size() == 10);
  CHECK(rows[0][0] == "xi");
  CHECK(rows[0][8] == "rho_frac");
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::stod(rows[i][8]) == doctest::Approx(1.0).epsilon(1e-9));
  // the synthetic center row
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows[1][1]) == 1.0);
  CHECK(std::stod(rows[1][3]) == 3.0);

  auto dim = run_cli("profile --n 3 --K 3.841707103229e14 --rho_c 76.0");
  auto drows = csv_rows(dim.out);
  REQUIRE(drows[0].size() == 14);
  CHECK(drows[0][10] == "r_cm");
  CHECK(drows[0][13] == "g_cgs");

  auto js = run_cli("profile --n 3 --format json");
  auto doc = json::parse(js.out);
  CHECK(doc["n"] == 3.0);
  CHECK(std::fabs(doc["surface"]["xi1"].get<double>() - 6.8968486194) < 1e-6);
  CHECK(doc["profile"].is_array());
}

TEST_CASE("cli: invariants of the exact index-five line") {
  auto res = run_cli("invariants --n 5");
  CHECK(res.code == 0);
  auto rows = csv_rows(res.out);
  REQUIRE(rows.size() > 100);
  CHECK(rows[0] == std::vector<std::string>{"u", "z", "w"});
  for (std::size_t i = 1; i < rows.size(); i += 97) {
    double z = std::stod(rows[i][1]), w = std::stod(rows[i][2]);
    // csv cells carry 6 significant digits, so allow the quantization step
    CHECK(std::fabs(w - 5.0 / 3.0 * z) <= 2e-5 * std::max(1.0, w));
  }
  auto js = json::parse(run_cli("invariants --n 3 --format json").out);
  CHECK(std::fabs(js["div_amplitude"].get<double>() - 4.7911071) < 1e-5);
  CHECK(js["divergence_exponent"].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(js["div_correction"].is_number());
}

TEST_CASE("cli: approximant error table") {
  auto res = run_cli("approx --n 3");
  CHECK(res.code == 0);
  auto rows = csv_rows(res.out);
  REQUIRE(rows.size() >= 7);  // header + picard + taylor2..8 + poly10 + pade
  CHECK(rows[0][0] == "kind");
  int found = 0;
  for (auto& r : rows)
    if (r[0] == "pade" || r[0] == "poly10" || r[0] == "picard") ++found;
  CHECK(found == 3);
  // general index keeps only the insertions and low truncations
  auto r2 = csv_rows(run_cli("approx --n 2").out);
  for (auto& r : r2) CHECK(r[0] != "pade");
}

TEST_CASE("cli: white dwarf block validates against its schema") {
  auto res = run_cli("wd --mu_e 2");
  CHECK(res.code == 0);
  auto doc = json::parse(res.out);
  check_schema(doc, "wd");
  CHECK(std::fabs(doc["M_ch_Msun"].get<double>() - 1.4558654742548365) < 1e-9);
  CHECK(std::fabs(doc["K_wd"].get<double>() - 4.93482491e14) < 5e6);
  double g = doc["M_ch_g"].get<double>(), p = doc["M_ch_pipeline_g"].get<double>();
  CHECK(std::fabs(g - p) / g < 1e-12);
}

TEST_CASE("cli: zams block, single and batch") {
  auto res = run_cli("zams --M 1 --mu 0.61 --kappa_p 0.34");
  CHECK(res.code == 0);
  auto doc = json::parse(res.out);
  check_schema(doc, "zams");
  CHECK(std::fabs(doc["beta"].get<double>() - 0.9995864133621443) < 1e-10);
  CHECK(std::fabs(doc["L_Lsun"].get<double>() - 15.892298) < 1e-3);

  std::string batch = "/tmp/polylab_zams_batch.csv";
  {
    std::ofstream out(batch);
    out << "M,mu\n1,0.61\n10,0.61\n";
  }
  auto bres = run_cli("zams --batch " + batch + " --kappa_p 0.34");
  CHECK(bres.code == 0);
  auto arr = json::parse(bres.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  CHECK(arr[1]["M_Msun"].get<double>() == doctest::Approx(10.0));
  CHECK(arr[1]["beta"].get<double>() < arr[0]["beta"].get<double>());
  std::remove(batch.c_str());
}

TEST_CASE("cli: orbit virial and sweep blocks") {
  auto v = run_cli("orbit --pot-n 1 --virial --periods 8");
  CHECK(v.code == 0);
  auto doc = json::parse(v.out);
  check_schema(doc, "virial");
  CHECK(std::fabs(doc["virial_lhs_2K"].get<double>() -
                  doc["virial_rhs_minus_nV"].get<double>()) <
        0.01 * std::fabs(doc["virial_lhs_2K"].get<double>()));
  CHECK(doc["max_E_drift"].get<double>() < 1e-8);

  auto s = run_cli("orbit --pot-n -2 --sweep");
  auto sdoc = json::parse(s.out);
  check_schema(sdoc, "sweep");
  CHECK(std::fabs(sdoc["exponent"].get<double>() -
                  sdoc["expected"].get<double>()) < 0.01);

  auto t = run_cli("orbit --pot-n 1 --periods 2");
  auto rows = csv_rows(t.out);
  CHECK(rows[0] == std::vector<std::string>{"t", "r", "theta", "K", "V", "A"});
  CHECK(rows.size() > 50);
}

TEST_CASE("cli: reconstruct emits the surface fractions") {
  auto res = run_cli("reconstruct --n 2");
  CHECK(res.code == 0);
  auto rows = csv_rows(res.out);
  CHECK(rows[0] ==
        std::vector<std::string>{"z", "w", "rho_frac", "m_frac", "r_frac"});
  auto& last = rows.back();
  CHECK(std::stod(last[3]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::stod(last[4]) > 0.999);
}

TEST_CASE("cli: config file defaults with flag override") {
  std::string cfg = "/tmp/polylab_test_config.ini";
  {
    std::ofstream out(cfg);
    out << "[profile]\nn=2.5\n";
  }
  auto a = json::parse(run_cli("profile --format json --config " + cfg).out);
  CHECK(a["n"] == 2.5);
  auto b =
      json::parse(run_cli("profile --format json --n 4 --config " + cfg).out);
  CHECK(b["n"] == 4.0);
  std::remove(cfg.c_str());
}

TEST_CASE("cli: --out writes the same bytes to a file") {
  std::string path = "/tmp/polylab_test_out.csv";
  auto direct = run_cli("table2");
  auto res = run_cli("table2 --out " + path);
  CHECK(res.code == 0);
  CHECK(res.out.empty());
  CHECK(read_file(path) == direct.out);
  std::remove(path.c_str());
}
