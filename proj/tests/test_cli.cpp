#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the command-line tool: exit codes and report content.

namespace {

using json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  json report;
  bool has_report = false;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
  std::string out_file = std::string("cli_out_") + tag + ".json";
  std::string cmd = std::string(GRCYCLE_BIN) + " " + args + " --out " + out_file + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(out_file);
  if (in) {
    try {
      in >> r.report;
      r.has_report = true;
    } catch (...) {
    }
  }
  return r;
}

std::string samples() { return std::string(GRCYCLE_SAMPLES); }

}  // namespace

TEST_CASE("cycle: worked GL_2 example") {
  RunResult r = run_cli("cycle --group " + samples() + "/gl2.json --e 2 --mu \"2,0;2,0\" --char 5",
                        "cycle_gl2");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("gates").at("a1").get<bool>());
  CHECK(r.report.at("gates").at("a2").get<bool>());
  auto coeffs = r.report.at("coefficients");
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs.at(0).at("lambda") == json::array({1, 1}));
  CHECK(coeffs.at(0).at("m") == 1);
  CHECK(coeffs.at(1).at("lambda") == json::array({2, 0}));
  CHECK(coeffs.at(1).at("leading").get<bool>());
}

TEST_CASE("cycle: mixed gates at p = 3 exit 2 only when the failing gate is enforced") {
  std::string base = "cycle --group " + samples() + "/gl2.json --e 2 --mu \"2,0;2,0\" --char 3";
  RunResult a1 = run_cli(base, "cycle_p3_a1");
  CHECK(a1.exit_code == 0);  // 4 <= 3 + 1
  REQUIRE(a1.has_report);
  CHECK(a1.report.at("gates").at("a1").get<bool>());
  CHECK_FALSE(a1.report.at("gates").at("a2").get<bool>());
  RunResult a2 = run_cli(base + " --gate a2", "cycle_p3_a2");
  CHECK(a2.exit_code == 2);
  RunResult ov = run_cli(base + " --gate a2 --override-bounds", "cycle_p3_ov");
  CHECK(ov.exit_code == 0);
}

TEST_CASE("cycle: missing twisting element") {
  RunResult r = run_cli("cycle --group " + samples() + "/sl2.json --e 1 --mu \"1\" --char 5",
                        "cycle_sl2");
  CHECK(r.exit_code == 1);
  REQUIRE(r.has_report);
  CHECK(r.report.at("error").get<std::string>() == "no twisting element");
}

TEST_CASE("cycle: malformed input") {
  RunResult r = run_cli("cycle --group " + samples() + "/gl2.json --e 2 --mu \"2,0\" --char 5",
                        "cycle_malformed");
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify: the worked example passes") {
  RunResult r = run_cli("verify --group " + samples() + "/gl2.json --e 2 --mu \"2,0;2,0\" --char 5 --n-max 4",
                        "verify_gl2");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("pass").get<bool>());
  CHECK(r.report.at("signed_sums").at(0).get<long long>() == -9);
  CHECK(r.report.at("degree_verdict").get<std::string>() == "consistent");
}

TEST_CASE("verify: n_max 1 notes insufficient data but exits 0") {
  RunResult r = run_cli("verify --group " + samples() + "/gl2.json --e 2 --mu \"2,0;2,0\" --char 5 --n-max 1",
                        "verify_n1");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("degree_verdict").get<std::string>() == "insufficient data");
}

TEST_CASE("verify: injected wrong coefficients exit 3") {
  std::string coeffs_file = "cli_bad_coeffs.json";
  {
    std::ofstream out(coeffs_file);
    out << R"([{"lambda": [2, 0], "m": 1}, {"lambda": [1, 1], "m": 2}])";
  }
  RunResult r = run_cli("verify --group " + samples() + "/gl2.json --e 2 --mu \"2,0;2,0\" --char 5 --n-max 3 --coeffs-file " + coeffs_file,
                        "verify_bad");
  CHECK(r.exit_code == 3);
  REQUIRE(r.has_report);
  CHECK_FALSE(r.report.at("identity").at(0).at("holds").get<bool>());
  CHECK(r.report.at("identity").at(0).contains("monomial"));
}

TEST_CASE("nabla: diagonal point") {
  RunResult r = run_cli("nabla --matrix " + samples() + "/matrix_diag_u2.json --e 2 --special",
                        "nabla_diag");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("nabla").get<bool>());
  CHECK(r.report.at("position") == json::array({2, 0}));
}

TEST_CASE("nabla: unipotent pole fails at e = 1, passes at e = 2") {
  RunResult bad = run_cli("nabla --matrix " + samples() + "/matrix_unipotent_pole.json --e 1 --special",
                          "nabla_pole1");
  CHECK(bad.exit_code == 2);
  REQUIRE(bad.has_report);
  CHECK_FALSE(bad.report.at("nabla").get<bool>());
  RunResult ok = run_cli("nabla --matrix " + samples() + "/matrix_unipotent_pole.json --e 2 --special",
                         "nabla_pole2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.report.at("nabla").get<bool>());
}

TEST_CASE("nabla: wedge bound against a declared type") {
  RunResult r = run_cli("nabla --matrix " + samples() + "/matrix_diag_u2.json --e 2 --special --mu \"1,0;1,0\"",
                        "nabla_wedge");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("wedge").get<bool>());
}

TEST_CASE("nabla: undecidable at declared precision exits 4") {
  RunResult r = run_cli("nabla --matrix " + samples() + "/matrix_lowprec.json --e 1 --special",
                        "nabla_lowprec");
  CHECK(r.exit_code == 4);
  REQUIRE(r.has_report);
  CHECK(r.report.contains("undecidable"));
}

TEST_CASE("nabla: generic fibre over a prime field") {
  RunResult r = run_cli("nabla --matrix " + samples() + "/matrix_fp_generic.json", "nabla_fp");
  CHECK(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report.at("nabla").get<bool>());
  auto pos = r.report.at("positions");
  CHECK(pos.at(0) == json::array({0, 0}));
  CHECK(pos.at(1) == json::array({1, 0}));
}

TEST_CASE("reports are byte-identical across runs") {
  std::string args = "cycle --group " + samples() + "/gl3.json --e 2 --mu \"3,1,0;3,1,0\" --char 7";
  run_cli(args, "det_a");
  run_cli(args, "det_b");
  std::ifstream a("cli_out_det_a.json"), b("cli_out_det_b.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK_FALSE(sa.str().empty());
}
