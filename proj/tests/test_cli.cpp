#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "difflearn/io.hpp"

namespace fs = std::filesystem;
using namespace difflearn;

namespace {

const fs::path kWork = fs::temp_directory_path() / "difflearn_test_cli";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::string& args) {
  const std::string out = (kWork / "stdout.txt").string();
  const std::string err = (kWork / "stderr.txt").string();
  const std::string cmd =
      std::string("\"") + DIFFLEARN_CLI + "\" " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text(out), read_text(err)};
}

std::string write_config(const std::string& name, const std::string& text) {
  const std::string path = (kWork / name).string();
  write_text(path, text);
  return path;
}

const char* kSmall = R"({
  "node_count": 6,
  "horizon": 40,
  "seed": 11,
  "topology": {"kind": "ring"},
  "metrics": {"grid_rounds": [1, 40], "grid_size": 11, "evolution_deltas": [0.001]},
  "outputs": {"message_log": "messages.jsonl", "plots": true}
})";

}  // namespace

TEST_CASE("setup") {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
}

TEST_CASE("validate-config") {
  const auto good = write_config("good.json", kSmall);
  CHECK(cli("validate-config " + good).code == 0);

  const auto bad = write_config("bad.json", "{\n  \"seed\": 1,\n  \"delta\": 2\n}\n");
  const Outcome r = cli("validate-config " + bad);
  CHECK(r.code == 1);
  CHECK(r.err.find("delta") != std::string::npos);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(cli("validate-config " + (kWork / "absent.json").string()).code == 3);
  CHECK(cli("no-such-command").code == 1);
}

TEST_CASE("emit-default-config produces a valid config") {
  const auto path = (kWork / "default.json").string();
  CHECK(cli("emit-default-config " + path).code == 0);
  CHECK(config_to_json(load_config(path)) == config_to_json(reference_scenario()));
}

TEST_CASE("simulate twice gives byte-identical outputs") {
  const auto cfg = write_config("small.json", kSmall);
  const auto a = kWork / "run_a";
  const auto b = kWork / "run_b";
  REQUIRE(cli("simulate --config " + cfg + " --out " + a.string()).code == 0);
  REQUIRE(cli("simulate --config " + cfg + " --out " + b.string() + " --workers 2").code == 0);
  for (const char* f : {"grid_report.csv", "bound_evolution.csv", "topology.txt",
                        "messages.jsonl", "plots/grid_agent0.svg", "plots/evolution_agent5.svg"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(read_text((a / f).string()) == read_text((b / f).string()));
  }
  const auto evolution = parse_evolution_csv(read_text((a / "bound_evolution.csv").string()));
  CHECK(evolution.back().delta == 0.001);
}

TEST_CASE("simulate honours the output directory variable") {
  const auto cfg = write_config("small.json", kSmall);
  const auto dir = kWork / "from_env";
  const std::string args = "simulate --config " + cfg;
  const std::string cmd = "DIFFLEARN_OUT_DIR=" + dir.string() + " \"" + DIFFLEARN_CLI + "\" " +
                          args + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "grid_report.csv"));
}

TEST_CASE("an invalid config writes nothing") {
  const auto bad = write_config("bad_sim.json", R"({"seed": 1, "horizon": 5, "delta": -1})");
  const auto dir = kWork / "never";
  CHECK(cli("simulate --config " + bad + " --out " + dir.string()).code == 1);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("statistical subcommands") {
  const auto csv = (kWork / "selfnorm.csv").string();
  const Outcome sn =
      cli("selfnorm-test --t 100 --delta 0.05 --reps 10000 --seed 7 --csv " + csv);
  CHECK(sn.code == 0);
  CHECK(read_text(csv).rfind(std::string(kLabHeader) + "\n", 0) == 0);

  CHECK(cli("martingale-test --t 10 --reps 2000 --seed 3").code == 0);
  CHECK(cli("coverage-test --reps 500 --seed 5").code == 0);
  // A bandwidth that leaves the query without data is a usage error.
  CHECK(cli("coverage-test --x 9 --bandwidth 0.1 --reps 200").code == 1);
  CHECK(cli("selfnorm-test --weights gamma").code == 1);
  CHECK(cli("martingale-test --reps 10").code == 1);
}

TEST_CASE("teardown") { fs::remove_all(kWork); }
