#include <algorithm>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "random_model.hpp"
#include "tickcheck/bundled.hpp"
#include "tickcheck/errors.hpp"

using namespace tickcheck;

namespace {

bool has_kind(const std::vector<Diagnostic>& ds, Diagnostic::Kind k) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.kind == k; });
}

const char* kLamp = R"(
class Lamp | on : Bool, timer : Time .
msg toggle .
var L : Oid .
vars X T : Time .
)";

std::string lamp_model(const std::string& body) { return std::string(kLamp) + body; }

// Splits printed source into declarations (each ends a line with " .").
std::vector<std::string> declarations(const std::string& printed) {
  std::vector<std::string> out;
  std::istringstream in(printed);
  std::string line, cur;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    cur += line + "\n";
    if (line.size() >= 2 && line.compare(line.size() - 2, 2, " .") == 0) {
      out.push_back(cur);
      cur.clear();
    }
  }
  return out;
}

}  // namespace

TEST_CASE("medical model declares four classes") {
  Model m = load_bundled("medical");
  std::vector<std::string> names;
  for (const auto& c : m.classes) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"Controller", "User", "VentMachine", "X-ray"});
  const ObjectInstance* ct = m.init().find_object("ct");
  REQUIRE(ct);
  CHECK(ct->cls == "Controller");
  CHECK(ct->at("clock").str() == "0");
  CHECK(ct->at("lastPauseTime").str() == "0");
}

TEST_CASE("a model without rules is valid") {
  Model m = parse_model(lamp_model("init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(m.rules.empty());
  CHECK(m.init().objects().size() == 1);
}

TEST_CASE("writing an undeclared attribute is a type error") {
  auto ds = check_model(lamp_model("rl [r] : < L : Lamp | on : true > => < L : Lamp | color : 1 > .\n"
                                   "init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(has_kind(ds, Diagnostic::Kind::Type));
}

TEST_CASE("type mismatches are reported") {
  auto ds = check_model(lamp_model("rl [r] : < L : Lamp | on : true > => < L : Lamp | on : 3 > .\n"
                                   "init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(has_kind(ds, Diagnostic::Kind::Type));
}

TEST_CASE("unbound variables are reported") {
  auto ds = check_model(lamp_model("rl [r] : < L : Lamp | on : true > => < L : Lamp | timer : Y > .\n"
                                   "init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(has_kind(ds, Diagnostic::Kind::UnboundVariable));
}

TEST_CASE("syntax errors carry a line number and parsing continues") {
  auto ds = check_model("class A | x : Time .\nclass B | y : : Time .\nclass C | z Time .\n");
  REQUIRE(ds.size() >= 2);
  CHECK(ds[0].kind == Diagnostic::Kind::Syntax);
  CHECK(ds[0].pos.line == 2);
  CHECK(ds[1].pos.line == 3);
  CHECK_THROWS_AS(parse_model("class A | x : Time .\nclass B | y : : Time ."), ModelError);
}

TEST_CASE("duplicates and reserved names") {
  CHECK(has_kind(check_model("class A | x : Time .\nclass A | y : Time .\ninit := none ."), Diagnostic::Kind::Duplicate));
  CHECK_FALSE(check_model("class #A | x : Time .\ninit := none .").empty());
  ParseOptions reserved;
  reserved.allow_reserved = true;
  CHECK(check_model("class #A | x : Time .\ninit := < #a : #A | x : 0 > .", reserved).empty());
  CHECK(has_kind(check_model("class A | x : Time .\ninit := < a : A | x : 0 > < a : A | x : 1 > ."),
                 Diagnostic::Kind::Duplicate));
}

TEST_CASE("negative time literals are rejected") {
  CHECK_FALSE(check_model("class A | x : Time .\ninit := < a : A | x : -3 > .").empty());
}

TEST_CASE("constants can be overridden") {
  ParseOptions opts;
  opts.params["gap"] = "7";
  Model m = parse_model(bundled_source("blinker"), opts);
  CHECK(m.const_values.at("gap").str() == "7");
  opts.params = {{"nosuch", "1"}};
  CHECK_THROWS_AS(parse_model(bundled_source("blinker"), opts), ModelError);
  opts.params = {{"gap", "true"}};
  CHECK_THROWS_AS(parse_model(bundled_source("blinker"), opts), ModelError);
}

TEST_CASE("flatness") {
  CHECK(validate_flatness(load_bundled("medical")).empty());
  auto create = check_model(lamp_model("rl [r] : < L : Lamp | on : true > => < L : Lamp | > < l2 : Lamp | on : true, timer : 0 > .\n"
                                       "init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(has_kind(create, Diagnostic::Kind::Flatness));
  auto destroy = check_model(lamp_model("rl [r] : < L : Lamp | on : true > => none .\n"
                                        "init := < l : Lamp | on : true, timer : 0 > ."));
  CHECK(has_kind(destroy, Diagnostic::Kind::Flatness));
  auto messages = check_model(lamp_model("rl [r] : toggle => dly(toggle, 3) .\ninit := toggle ."));
  CHECK(messages.empty());
}

TEST_CASE("printing and reparsing is a fixed point") {
  for (const auto& name : bundled_names()) {
    Model m = load_bundled(name);
    std::string once = print_model(m);
    std::string twice = print_model(parse_model(once));
    INFO(name);
    CHECK(once == twice);
  }
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Model m = parse_model(testing::random_model_source(seed));
    std::string once = print_model(m);
    INFO("seed " << seed);
    CHECK(print_model(parse_model(once)) == once);
  }
}

TEST_CASE("validation does not depend on declaration order") {
  std::mt19937_64 rng(3);
  for (const auto& name : bundled_names()) {
    auto decls = declarations(print_model(load_bundled(name)));
    for (int k = 0; k < 5; ++k) {
      std::shuffle(decls.begin(), decls.end(), rng);
      std::string src;
      for (const auto& d : decls) src += d;
      INFO(name << "\n" << src);
      CHECK(check_model(src).empty());
    }
  }
  std::string broken = lamp_model("rl [r] : < L : Lamp | on : true > => < L : Lamp | timer : Y > .\n"
                                  "init := < l : Lamp | on : true, timer : 0 > .");
  auto decls = declarations(print_model(parse_model(lamp_model("init := < l : Lamp | on : true, timer : 0 > ."))));
  decls.insert(decls.begin(), "rl [r] : < L : Lamp | on : true > => < L : Lamp | timer : Y > .\n");
  std::string reordered;
  for (const auto& d : decls) reordered += d;
  auto a = check_model(broken), b = check_model(reordered);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].kind == b[i].kind);
}

TEST_CASE("state predicates") {
  Model m = load_bundled("pulse");
  CHECK(parse_predicate(m, "exists < L : Lamp | lit : true >"));
  CHECK_THROWS_AS(parse_predicate(m, "exists < L : Lamp | color : 1 >"), ModelError);
}
