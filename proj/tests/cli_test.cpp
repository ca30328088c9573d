// Copyright 2026 The esdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

// End-to-end tests of the esdlab binary. The path to the built executable is
// baked in by the build; ESDLAB_CLI_BIN in the environment overrides it.

namespace {

std::string cli_binary() {
  if (const char* env = std::getenv("ESDLAB_CLI_BIN")) return env;
#ifdef ESDLAB_CLI_BIN
  return ESDLAB_CLI_BIN;
#else
  FAIL("ESDLAB_CLI_BIN is not set");
  return "";
#endif
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  char err_path[] = "/tmp/esdlab_cli_stderr_XXXXXX";
  const int err_fd = mkstemp(err_path);
  REQUIRE(err_fd >= 0);
  close(err_fd);

  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += cli_binary() + " " + args + " 2>" + err_path;

  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::ifstream ef(err_path);
  std::stringstream es;
  es << ef.rdbuf();
  res.err = es.str();
  unlink(err_path);
  return res;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double as_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  REQUIRE(end != text.c_str());
  return v;
}

// werner-singlet(0.5) as a compact X-state JSON literal.
const char* kWernerHalfJson =
    R"({"p11":0.125,"p22":0.375,"p33":0.375,"p44":0.125,"c23":[-0.25,0]})";

}  // namespace

TEST_CASE("esd-time reproduces the zero temperature death time", "[cli]") {
  const auto res = run_cli("esd-time --preset eq18");
  REQUIRE(res.exit_code == 0);
  CHECK_THAT(as_number(res.out), Catch::Matchers::WithinAbs(0.53479999673957404, 1e-4));
}

TEST_CASE("esd-time reproduces the thermal death time", "[cli]") {
  const auto res = run_cli("esd-time --preset eq18 --m 0.1 --n 0.1");
  REQUIRE(res.exit_code == 0);
  CHECK_THAT(as_number(res.out), Catch::Matchers::WithinAbs(0.41146518118, 1e-4));
}

TEST_CASE("esd-time reports no death for a bell state at zero temperature", "[cli]") {
  const auto res = run_cli("esd-time --preset bell-psi-plus");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("no-death(horizon=30") == 0);
}

TEST_CASE("esd-time horizon comes from flag, then environment, then default", "[cli]") {
  const auto env_only = run_cli("esd-time --preset eq18", "ESDLAB_HORIZON=0.3");
  REQUIRE(env_only.exit_code == 0);
  CHECK(env_only.out.find("no-death(horizon=0.3)") == 0);

  const auto flag_wins = run_cli("esd-time --preset eq18 --horizon 1", "ESDLAB_HORIZON=0.3");
  REQUIRE(flag_wins.exit_code == 0);
  CHECK_THAT(as_number(flag_wins.out), Catch::Matchers::WithinAbs(0.5348, 1e-3));

  const auto bad_env = run_cli("esd-time --preset eq18", "ESDLAB_HORIZON=abc");
  CHECK(bad_env.exit_code == 2);
  const auto neg_env = run_cli("esd-time --preset eq18", "ESDLAB_HORIZON=-1");
  CHECK(neg_env.exit_code == 2);
}

TEST_CASE("a population swap can avert or hasten death", "[cli]") {
  // At zero temperature a swap inside the avoidance window (before ~0.1293)
  // keeps the state entangled forever.
  const auto averted = run_cli("esd-time --preset eq18 --swap 11-44 --t-sw 0.1");
  REQUIRE(averted.exit_code == 0);
  CHECK(averted.out.find("no-death") == 0);

  // At finite temperature a late swap brings death forward instead.
  const auto hastened =
      run_cli("esd-time --preset eq18 --m 0.1 --n 0.1 --swap 11-44 --t-sw 0.35");
  REQUIRE(hastened.exit_code == 0);
  const double t = as_number(hastened.out);
  CHECK(t > 0.35);
  CHECK(t < 0.4114);

  const auto missing_tsw = run_cli("esd-time --preset eq18 --swap 11-44");
  CHECK(missing_tsw.exit_code == 2);
  const auto bad_kind = run_cli("esd-time --preset eq18 --swap sideways --t-sw 0.1");
  CHECK(bad_kind.exit_code == 2);
}

TEST_CASE("esd-time structured formats", "[cli]") {
  const auto js = run_cli("esd-time --preset eq18 --format json");
  REQUIRE(js.exit_code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK_THAT(doc.at("t_esd").get<double>(), Catch::Matchers::WithinAbs(0.5348, 1e-3));
  CHECK_THAT(doc.at("horizon").get<double>(), Catch::Matchers::WithinAbs(30.0, 1e-12));

  const auto js_alive = run_cli("esd-time --preset bell-psi-plus --format json");
  REQUIRE(js_alive.exit_code == 0);
  CHECK(nlohmann::json::parse(js_alive.out).at("t_esd").is_null());

  const auto csv = run_cli("esd-time --preset bell-psi-plus --format csv");
  REQUIRE(csv.exit_code == 0);
  const auto lines = split_lines(csv.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "t_esd");
  CHECK(lines[1] == "no-death");
}

TEST_CASE("evolve csv has one column per matrix element component", "[cli]") {
  const auto res = run_cli("evolve --preset eq18 --t 0.25 --t 0.5");
  REQUIRE(res.exit_code == 0);
  const auto lines = split_lines(res.out);
  REQUIRE(lines.size() == 3);

  const auto head = split_csv(lines[0]);
  REQUIRE(head.size() == 34);
  CHECK(head[0] == "t");
  CHECK(head[1] == "re11");
  CHECK(head[2] == "im11");
  CHECK(head[32] == "im44");
  CHECK(head[33] == "negativity");

  const auto row = split_csv(lines[1]);
  REQUIRE(row.size() == 34);
  CHECK_THAT(as_number(row[0]), Catch::Matchers::WithinAbs(0.25, 1e-15));
  // Populations sit at re11, re22, re33, re44: columns 1, 11, 21, 31.
  const double trace = as_number(row[1]) + as_number(row[11]) + as_number(row[21]) + as_number(row[31]);
  CHECK_THAT(trace, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK(as_number(row[33]) > 0.0);  // still entangled before t = 0.5348

  const auto row2 = split_csv(lines[2]);
  CHECK(as_number(row2[33]) > 0.0);
  CHECK(as_number(row2[33]) < as_number(row[33]));
}

TEST_CASE("evolve oracle column stays within the cross-check tolerance", "[cli]") {
  const auto res = run_cli("evolve --preset eq18 --m 0.2 --n 0.05 --t 0.7 --oracle");
  REQUIRE(res.exit_code == 0);
  const auto lines = split_lines(res.out);
  REQUIRE(lines.size() == 2);
  const auto head = split_csv(lines[0]);
  REQUIRE(head.size() == 35);
  CHECK(head[34] == "oracle_max_abs_diff");
  const auto row = split_csv(lines[1]);
  REQUIRE(row.size() == 35);
  CHECK(as_number(row[34]) < 1e-8);
}

TEST_CASE("evolve json carries params and full states", "[cli]") {
  const auto res = run_cli("evolve --preset bell-phi-plus --grid 0:1:0.5 --format json");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK_THAT(doc.at("params").at("m").get<double>(), Catch::Matchers::WithinAbs(0.0, 0.0));
  CHECK_THAT(doc.at("params").at("gamma1").get<double>(), Catch::Matchers::WithinAbs(1.0, 0.0));
  REQUIRE(doc.at("rows").size() == 3);
  const auto& first = doc.at("rows").at(0);
  CHECK_THAT(first.at("t").get<double>(), Catch::Matchers::WithinAbs(0.0, 0.0));
  CHECK_THAT(first.at("negativity").get<double>(), Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK_THAT(first.at("state").at("re").at(0).at(0).get<double>(),
             Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK(first.at("state").at("basis").get<std::string>() == "11,10,01,00");
}

TEST_CASE("evolve accepts inline states and state files", "[cli]") {
  const std::string inline_args =
      std::string("esd-time --state '") + kWernerHalfJson + "'";
  const auto inline_res = run_cli(inline_args);
  REQUIRE(inline_res.exit_code == 0);
  CHECK_THAT(as_number(inline_res.out), Catch::Matchers::WithinAbs(0.62381071740006, 1e-4));

  char state_path[] = "/tmp/esdlab_cli_state_XXXXXX";
  const int fd = mkstemp(state_path);
  REQUIRE(fd >= 0);
  close(fd);
  {
    std::ofstream f(state_path);
    f << kWernerHalfJson;
  }
  const auto file_res = run_cli(std::string("esd-time --state ") + state_path);
  REQUIRE(file_res.exit_code == 0);
  CHECK_THAT(as_number(file_res.out), Catch::Matchers::WithinAbs(0.62381071740006, 1e-4));
  unlink(state_path);
}

TEST_CASE("bad input exits with code 2", "[cli]") {
  // Separable input state.
  CHECK(run_cli("esd-time --preset werner-singlet:0.2").exit_code == 2);
  // Malformed inline JSON.
  CHECK(run_cli("esd-time --state '{\"p11\":}'").exit_code == 2);
  // Missing the state entirely, or giving it twice.
  CHECK(run_cli("esd-time").exit_code == 2);
  CHECK(run_cli("esd-time --preset eq18 --state '{\"p11\":1}'").exit_code == 2);
  // Unknown preset and out-of-range preset parameter.
  CHECK(run_cli("esd-time --preset ghz").exit_code == 2);
  CHECK(run_cli("esd-time --preset werner-singlet:1.5").exit_code == 2);
  // Unknown flag, unknown subcommand, missing subcommand.
  CHECK(run_cli("esd-time --preset eq18 --bogus 1").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  // Bad grids.
  CHECK(run_cli("evolve --preset eq18 --grid 1:0:0.1").exit_code == 2);
  CHECK(run_cli("evolve --preset eq18 --grid 0:1:0").exit_code == 2);
  // Both or neither of --t / --grid.
  CHECK(run_cli("evolve --preset eq18 --t 1 --grid 0:1:0.5").exit_code == 2);
  CHECK(run_cli("evolve --preset eq18").exit_code == 2);
  // Negative reservoir occupation.
  CHECK(run_cli("esd-time --preset eq18 --m -0.5").exit_code == 2);
  // Missing state file.
  CHECK(run_cli("esd-time --state /nonexistent/state.json").exit_code == 2);

  const auto res = run_cli("esd-time --preset werner-singlet:0.2");
  CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("help exits cleanly", "[cli]") {
  CHECK(run_cli("--help").exit_code == 0);
  const auto sub = run_cli("evolve --help");
  CHECK(sub.exit_code == 0);
  CHECK(sub.out.find("--preset") != std::string::npos);
}

TEST_CASE("a runtime budget failure exits with code 3", "[cli]") {
  // The requested time needs more integrator steps than the budget allows.
  const auto res = run_cli("evolve --preset eq18 --m 0.1 --n 0.1 --t 1000000 --oracle");
  CHECK(res.exit_code == 3);
  CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("sweep json summarises delay and hasten behaviour", "[cli]") {
  const auto res = run_cli(
      "sweep --preset eq18 --m 0.1 --n 0.1 --grid 0:0.4:0.1 --format json");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.at("samples").size() == 5);
  CHECK_THAT(doc.at("t_esd_no_switch").get<double>(),
             Catch::Matchers::WithinAbs(0.411465, 1e-4));
  REQUIRE_FALSE(doc.at("t_end_max").is_null());
  CHECK(doc.at("t_end_max").get<double>() > doc.at("t_esd_no_switch").get<double>());
  REQUIRE_FALSE(doc.at("t_B").is_null());
  CHECK(doc.at("t_B").get<double>() > 0.2);
  CHECK(doc.at("t_B").get<double>() < 0.35);
  for (const auto& s : doc.at("samples")) {
    REQUIRE_FALSE(s.at("t_end").is_null());  // everything dies at finite temperature
    CHECK(s.at("t_end").get<double>() >= s.at("t_sw").get<double>());
  }
}

TEST_CASE("sweep csv writes rows to a file and the summary to stdout", "[cli]") {
  char rows_path[] = "/tmp/esdlab_cli_rows_XXXXXX";
  const int fd = mkstemp(rows_path);
  REQUIRE(fd >= 0);
  close(fd);

  const auto res = run_cli(std::string("sweep --preset eq18 --m 0.1 --n 0.1 "
                                       "--grid 0:0.4:0.2 --out ") +
                           rows_path);
  REQUIRE(res.exit_code == 0);

  const auto summary = nlohmann::json::parse(res.out);
  CHECK_THAT(summary.at("t_esd_no_switch").get<double>(),
             Catch::Matchers::WithinAbs(0.411465, 1e-4));

  std::ifstream f(rows_path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto lines = split_lines(ss.str());
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "t_sw,t_end");
  const auto row0 = split_csv(lines[1]);
  REQUIRE(row0.size() == 2);
  CHECK_THAT(as_number(row0[0]), Catch::Matchers::WithinAbs(0.0, 0.0));
  unlink(rows_path);
}

TEST_CASE("werner-scan classifies the mixing range", "[cli]") {
  const auto res = run_cli("werner-scan --family singlet --grid 0.4:0.7:0.1");
  REQUIRE(res.exit_code == 0);
  const auto lines = split_lines(res.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "a,family,verdict,t_esd,boundary");

  const auto row_a04 = split_csv(lines[1]);
  REQUIRE(row_a04.size() == 5);
  CHECK(row_a04[1] == "singlet");
  CHECK(row_a04[2] == "esd");

  const auto row_a05 = split_csv(lines[2]);
  CHECK(row_a05[2] == "esd");
  CHECK_THAT(as_number(row_a05[3]), Catch::Matchers::WithinAbs(0.62381071740006, 1e-4));

  const auto row_a07 = split_csv(lines[4]);
  CHECK(row_a07[2] == "no-death");
  CHECK(row_a07[3] == "no-death");

  const auto sep = run_cli("werner-scan --family singlet --grid 0.2:0.2:0.1");
  REQUIRE(sep.exit_code == 0);
  const auto sep_lines = split_lines(sep.out);
  REQUIRE(sep_lines.size() == 2);
  CHECK(split_csv(sep_lines[1])[2] == "separable");

  const auto both = run_cli("werner-scan --grid 0.5:0.5:0.1 --format json");
  REQUIRE(both.exit_code == 0);
  const auto doc = nlohmann::json::parse(both.out);
  REQUIRE(doc.at("rows").size() == 2);
  CHECK(doc.at("rows").at(0).at("family").get<std::string>() == "singlet");
  CHECK(doc.at("rows").at(1).at("family").get<std::string>() == "triplet");
  CHECK(doc.at("rows").at(1).at("verdict").get<std::string>() == "esd");

  CHECK(run_cli("werner-scan --family diagonal").exit_code == 2);
  CHECK(run_cli("werner-scan --grid 0:1:0.5").exit_code == 2);  // a = 0 not allowed
}

TEST_CASE("validate accepts good states and rejects bad ones", "[cli]") {
  const auto good = run_cli("validate --preset eq18");
  REQUIRE(good.exit_code == 0);
  CHECK(good.out.find("x-shaped: yes") != std::string::npos);
  CHECK(good.out.find("FAIL") == std::string::npos);

  const auto bad = run_cli(
      "validate --state '{\"p11\":2,\"p22\":0,\"p33\":0,\"p44\":0}'");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  const auto js = run_cli("validate --preset bell-phi-plus --format json");
  REQUIRE(js.exit_code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc.at("valid").get<bool>());
  CHECK(doc.at("x_shaped").get<bool>());
  REQUIRE_FALSE(doc.at("checks").empty());
}
