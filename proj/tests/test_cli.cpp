#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "subprocess.hpp"

using namespace cegiw::testing;

namespace {

struct CliEnv {
  std::string bin;
  std::string models;
  std::string fixtures;
  std::string fake_checker;
};

CliEnv cli_env() {
  CliEnv env;
  env.bin = env_or("CEGIW_BIN", "");
  env.models = env_or("CEGIW_MODELS_DIR", "models");
  env.fixtures = env_or("CEGIW_FIXTURES_DIR", "tests/fixtures");
  env.fake_checker = env_or("CEGIW_FAKE_CHECKER", "tests/fake_checker.sh");
  return env;
}

std::string sq(const std::string& s) { return "'" + s + "'"; }

std::string check_cmd(const CliEnv& env, const std::string& model, const std::string& prop,
                      const std::string& bound, const std::string& extra = "") {
  std::string cmd = env.bin + " check --model " + env.models + "/" + model + " --prop " +
                    sq(prop) + " --bound " + bound;
  if (!extra.empty()) cmd += " " + extra;
  return cmd;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("an unweakenable property reports the witness lasso") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(
      check_cmd(env, "foraging.mdl", "G (resting -> F[1,4]? resting)", "8", "--quiet"));
  CHECK(r.exit_code == 1);
  CHECK(r.output ==
        "no weakening exists\n"
        "witness prefix: {resting} {leavingHome} {randomWalk}\n"
        "witness loop: {moveToFood} {scanArena}\n");
}

TEST_CASE("the recharging model widens the return window on stdout") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(
      check_cmd(env, "foraging_battery.mdl", "G (resting -> F[1,4]? resting)", "24", "--quiet"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "G (resting -> F[1,20] resting)\n");
}

TEST_CASE("a contracting target narrows until the property holds") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(check_cmd(env, "foraging_battery.mdl",
                                      "G (resting & F[1,1] !resting -> G[1,8]? !resting)", "24",
                                      "--quiet"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "G (resting & F[1,1] !resting -> G[1,3] !resting)\n");
}

TEST_CASE("a property that already holds comes back unchanged") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(
      check_cmd(env, "foraging_battery.mdl", "G (resting -> F[1,4]? resting)", "8", "--quiet"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "G (resting -> F[1,4] resting)\n");
}

TEST_CASE("progress notes appear on stderr unless silenced") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(
      check_cmd(env, "foraging_battery.mdl", "G (resting -> F[1,4]? resting)", "24"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("property: G (resting -> F[1,4] resting)") != std::string::npos);
  CHECK(r.output.find("target: U[1,4] (right bound extends)") != std::string::npos);
  CHECK(r.output.find("bound: 24, backend: internal") != std::string::npos);
  CHECK(r.output.find("weakened interval: [1,20] after 2 iteration(s)") != std::string::npos);
  CHECK(r.output.find("G (resting -> F[1,20] resting)") != std::string::npos);
}

TEST_CASE("the property can come from a file") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  std::string prop_file = temp_path("cegiw_cli_prop.txt");
  {
    std::ofstream out(prop_file);
    out << "G (resting -> F[1,4]? resting)\n";
  }
  RunResult r = run_command(
      check_cmd(env, "foraging_battery.mdl", "@" + prop_file, "24", "--quiet"));
  std::filesystem::remove(prop_file);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "G (resting -> F[1,20] resting)\n");
}

TEST_CASE("iteration logs are written where asked") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  std::string json_file = temp_path("cegiw_cli_log.json");
  std::string csv_file = temp_path("cegiw_cli_log.csv");
  std::filesystem::remove(json_file);
  std::filesystem::remove(csv_file);
  RunResult r = run_command(check_cmd(env, "foraging_battery.mdl",
                                      "G (resting -> F[1,4]? resting)", "24",
                                      "--quiet --log-json " + json_file + " --log-csv " +
                                          csv_file));
  CHECK(r.exit_code == 0);

  std::string csv = slurp(csv_file);
  CHECK(csv == "iteration,lo,hi\n1,1,20\n2,1,20\n");

  std::string json = slurp(json_file);
  std::size_t newline = json.find('\n');
  REQUIRE(newline != std::string::npos);
  std::string line1 = json.substr(0, newline);
  std::string line2 = json.substr(newline + 1);
  REQUIRE_FALSE(line2.empty());
  CHECK(line2.back() == '\n');
  line2.pop_back();
  CHECK(line2.find('\n') == std::string::npos);

  CHECK(line1.find("\"iteration\":1") != std::string::npos);
  CHECK(line1.find("\"check_bound\":24") != std::string::npos);
  CHECK(line1.find("\"check_holds\":false") != std::string::npos);
  CHECK(line1.find("\"interval_before\":{\"hi\":4,\"lo\":1}") != std::string::npos);
  CHECK(line1.find("\"interval_after\":{\"hi\":20,\"lo\":1}") != std::string::npos);
  CHECK(line2.find("\"iteration\":2") != std::string::npos);
  CHECK(line2.find("\"check_holds\":true") != std::string::npos);
  CHECK(line2.find("\"counterexamples\":[]") != std::string::npos);
  CHECK(line2.find("\"outcomes\":[]") != std::string::npos);

  std::filesystem::remove(json_file);
  std::filesystem::remove(csv_file);
}

TEST_CASE("the iteration limit surfaces as its own exit code") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  RunResult r = run_command(check_cmd(env, "foraging_battery.mdl",
                                      "G (resting -> F[1,4]? resting)", "24",
                                      "--quiet --max-iterations 1"));
  CHECK(r.exit_code == 2);
  CHECK(r.output == "iteration limit reached without convergence\n");
}

TEST_CASE("usage problems exit with code 3") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());

  SUBCASE("no subcommand") {
    RunResult r = run_command(env.bin);
    CHECK(r.exit_code == 3);
    CHECK_FALSE(r.output.empty());
  }
  SUBCASE("missing required options") {
    RunResult r = run_command(env.bin + " check --model " + env.models + "/foraging.mdl");
    CHECK(r.exit_code == 3);
  }
  SUBCASE("unknown backend") {
    RunResult r = run_command(check_cmd(env, "foraging.mdl", "G (resting -> F[1,4]? resting)",
                                        "8", "--backend bogus"));
    CHECK(r.exit_code == 3);
  }
  SUBCASE("help exits cleanly") {
    RunResult r = run_command(env.bin + " --help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("check") != std::string::npos);
  }
}

TEST_CASE("input errors exit with code 3 and an error line") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());

  SUBCASE("property without a marker") {
    RunResult r = run_command(
        check_cmd(env, "foraging.mdl", "G (resting -> F[1,4] resting)", "8", "--quiet"));
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("error:") != std::string::npos);
  }
  SUBCASE("missing model file") {
    RunResult r = run_command(env.bin +
                              " check --model /nonexistent/model.mdl"
                              " --prop 'G (resting -> F[1,4]? resting)' --bound 8 --quiet");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("error: cannot read '/nonexistent/model.mdl'") != std::string::npos);
  }
  SUBCASE("atom the model never defines") {
    RunResult r = run_command(
        check_cmd(env, "foraging.mdl", "G (resting -> F[1,4]? zz)", "8", "--quiet"));
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("error: atom 'zz' is not defined by the model") != std::string::npos);
  }
  SUBCASE("external backend without a command") {
    RunResult r = run_command("CEGIW_EXTERNAL_CHECKER= " +
                              check_cmd(env, "foraging.mdl", "G (resting -> F[1,2]? resting)",
                                        "8", "--quiet --backend external"));
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("error: the external backend needs --external-cmd") !=
          std::string::npos);
  }
}

TEST_CASE("the external backend drives the loop through a scripted checker") {
  CliEnv env = cli_env();
  REQUIRE_FALSE(env.bin.empty());
  std::string state_file = temp_path("cegiw_cli_fake_state");
  std::filesystem::remove(state_file);
  std::string cmd = "FAKE_CHECKER_OUTPUT=" + sq(env.fixtures + "/gap4.out") +
                    " FAKE_CHECKER_REST=" + sq(env.fixtures + "/holds.out") +
                    " FAKE_CHECKER_STATE=" + sq(state_file) + " " +
                    check_cmd(env, "foraging.mdl", "G (resting -> F[1,2]? resting)", "8",
                              "--quiet --backend external --external-cmd " + env.fake_checker);
  RunResult r = run_command(cmd);
  std::filesystem::remove(state_file);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "G (resting -> F[1,4] resting)\n");
}
