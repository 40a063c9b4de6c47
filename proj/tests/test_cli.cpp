#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "tickcheck/bundled.hpp"
#include "tickcheck/cli.hpp"
#include "tickcheck/errors.hpp"

using namespace tickcheck;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return Run{code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(TICKCHECK_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("bundled models") {
  auto names = bundled_names();
  for (const char* n : {"medical", "pulse", "blinker", "traffic"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  Model pulse = load_bundled("pulse");
  CHECK(pulse.classes.size() == 2);
  CHECK(pulse.rules.size() == 2);
  CHECK_THROWS_AS(load_bundled("nosuch"), Error);
  CHECK(find_model("pulse").origin == "bundled:pulse");
  CHECK(find_model("pulse.rtm").origin == "bundled:pulse");
}

TEST_CASE("exit codes") {
  CHECK(run({"validate", "traffic"}).code == cli::Satisfied);
  CHECK(run({"br", "pulse", "-p", "armed", "-q", "lit", "-r", "5"}).code == cli::Satisfied);
  Run cex = run({"br", "pulse", "-p", "armed", "-q", "lit", "-r", "4"});
  CHECK(cex.code == cli::Counterexample);
  CHECK(cex.out.find("Property not satisfied") != std::string::npos);
  CHECK(cex.out.find("observer clock: 5 (on)") != std::string::npos);
  CHECK(run({"ms", "blinker", "-p", "lit", "-r", "5"}).code == cli::Counterexample);
  CHECK(run({"br", "traffic", "-p", "buttonPushed(NS)", "-q", "pedLightGreen(NS)", "-r", "15", "--state-bound", "10"})
            .code == cli::Unknown);
  CHECK(run({"br", "traffic", "-p", "buttonPushed(NS)", "-q", "pedLightGreen(NS)", "-r", "15", "--param",
             "failure=true"})
            .code == cli::Counterexample);
  CHECK(run({"br", "pulse", "-p", "nosuch", "-q", "lit", "-r", "5"}).code == cli::UsageError);
  CHECK(run({"br", "pulse", "-p", "armed", "-q", "lit", "-r", "0"}).code == cli::UsageError);
  CHECK(run({"br", "nosuch", "-p", "a", "-q", "b", "-r", "1"}).code == cli::UsageError);
  CHECK(run({"frobnicate"}).code == cli::UsageError);
  CHECK(run({}).code == cli::UsageError);
}

TEST_CASE("tick invariance fixtures") {
  Run bad = run({"br", fixture("expiring.rtm"), "-p", "counting", "-q", "expired", "-r", "5"});
  CHECK(bad.code == cli::PreconditionFailed);
  CHECK(bad.out.find("=>[tick 3]") != std::string::npos);
  CHECK(run({"br", fixture("steady.rtm"), "-p", "counting", "-q", "finished", "-r", "10"}).code == cli::Satisfied);
  CHECK(run({"br", fixture("steady.rtm"), "-p", "counting", "-q", "finished", "-r", "5"}).code == cli::Counterexample);
}

TEST_CASE("model errors are reported with their location") {
  auto dir = std::filesystem::temp_directory_path() / "tickcheck-cli-test";
  std::filesystem::create_directories(dir);
  auto path = dir / "broken.rtm";
  std::ofstream(path) << "class A | x : Time .\ninit := < a : A | y : 0 > .\n";
  Run r = run({"validate", path.string()});
  CHECK(r.code == cli::UsageError);
  CHECK(r.out.find("broken.rtm:2:9: type error") != std::string::npos);
  CHECK(run({"br", path.string(), "-p", "p", "-q", "p", "-r", "1"}).err.find("broken.rtm:2") != std::string::npos);
}

TEST_CASE("model search path") {
  auto dir = std::filesystem::temp_directory_path() / "tickcheck-models-test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "tiny.rtm") << "class A | x : Time .\nprop p := true .\ninit := < a : A | x : 0 > .\n";
  ::setenv("TICKCHECK_MODELS", ("/nonexistent:" + dir.string()).c_str(), 1);
  CHECK(run({"validate", "tiny"}).code == cli::Satisfied);
  CHECK(find_model("tiny").origin == (dir / "tiny.rtm").string());
  ::unsetenv("TICKCHECK_MODELS");
  CHECK(run({"validate", "tiny"}).code == cli::UsageError);
}

TEST_CASE("json traces") {
  Run r = run({"br", "pulse", "-p", "armed", "-q", "lit", "-r", "4", "--format", "json-trace"});
  REQUIRE(r.code == cli::Counterexample);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["header"]["verdict"] == "counterexample");
  CHECK(j["header"]["strategy"] == "maximal");
  CHECK(j["header"]["model_hash"].get<std::string>().size() == 16);
  REQUIRE(j["steps"].size() == 2);
  CHECK(j["steps"][0]["label"].is_null());
  CHECK(j["steps"][1]["label"] == "tick");
  CHECK(j["steps"][1]["elapsed"] == "5");

  Run projected = run({"br", "pulse", "-p", "armed", "-q", "lit", "-r", "4", "--format", "json-trace", "--project"});
  auto p = nlohmann::json::parse(projected.out);
  CHECK(p["steps"][1]["state"].get<std::string>().find("#clock") == std::string::npos);
}

TEST_CASE("other subcommands") {
  Run s = run({"search", "pulse", "--such-that", "exists < L : Lamp | lit : true >"});
  CHECK(s.out.find("in time 5") != std::string::npos);
  Run sim = run({"simulate", "medical", "--bound", "60000"});
  CHECK(sim.code == cli::Satisfied);
  CHECK(sim.out.find("=>[pushButton]") != std::string::npos);
  Run oracle = run({"oracle", "pulse", "--formula", "[] (armed -> <>le(5) lit)"});
  CHECK(oracle.code == cli::Satisfied);
  CHECK(run({"oracle", "pulse", "--formula", "[] (armed -> <>le(4) lit)"}).code == cli::Counterexample);
  Run stuck = run({"oracle", "pulse", "--formula", "armed U[le 3] lit"});
  CHECK(stuck.out.find("--- deadlock: time stands still") != std::string::npos);
  CHECK(stuck.out.find("--- loop starts here") == std::string::npos);
  Run cycle = run({"oracle", "blinker", "--formula", "[]le(3) lit"});
  CHECK(cycle.out.find("--- back to the loop start") != std::string::npos);
  Run inst = run({"instrument", "br", "pulse", "-p", "armed", "-q", "lit", "-r", "5"});
  CHECK(inst.code == cli::Satisfied);
  CHECK(inst.out.find("class Clock") != std::string::npos);
}
