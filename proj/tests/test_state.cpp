#include <algorithm>
#include <map>

#include "catch_amalgamated.hpp"
#include "tickcheck/bundled.hpp"
#include "tickcheck/checker.hpp"
#include "tickcheck/errors.hpp"
#include "tickcheck/eval.hpp"
#include "tickcheck/trace.hpp"

using namespace tickcheck;

namespace {

ObjectInstance lamp(const std::string& oid, bool on) {
  return ObjectInstance{oid, "Lamp", {{"on", AttrValue(on)}}};
}

MessageInstance msg(const std::string& name, TimeValue delay) { return MessageInstance{name, {}, std::move(delay)}; }

// Independent multiset view: sorted list of element renderings.
std::vector<std::string> elements(const Configuration& c) {
  std::vector<std::string> out;
  for (const auto& o : c.objects()) {
    Configuration one;
    one.add_object(o);
    out.push_back(render(one));
  }
  for (const auto& m : c.messages()) {
    Configuration one;
    one.add_message(m);
    out.push_back(render(one));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("configuration keys ignore construction order") {
  Configuration a, b;
  a.add_object(lamp("l1", true));
  a.add_object(lamp("l2", false));
  a.add_message(msg("ping", 3));
  a.add_message(msg("pong", 0));
  b.add_message(msg("pong", 0));
  b.add_object(lamp("l2", false));
  b.add_message(msg("ping", 3));
  b.add_object(lamp("l1", true));
  CHECK(a.key() == b.key());
  CHECK(a == b);
}

TEST_CASE("configuration keys distinguish attribute values") {
  Configuration a, b;
  a.add_object(lamp("l1", true));
  b.add_object(lamp("l1", false));
  CHECK(a.key() != b.key());
}

TEST_CASE("equal rational delays give equal keys") {
  Configuration a, b;
  a.add_message(msg("m", TimeValue::rational(1, 2)));
  b.add_message(msg("m", TimeValue::rational(2, 4)));
  CHECK(a.key() == b.key());
}

TEST_CASE("message multiplicity is part of the key") {
  Configuration a, b;
  a.add_message(msg("m", 0));
  b.add_message(msg("m", 0));
  b.add_message(msg("m", 0));
  CHECK(a.key() != b.key());
}

TEST_CASE("duplicate oids are rejected") {
  Configuration a;
  a.add_object(lamp("l1", true));
  CHECK_THROWS_AS(a.add_object(lamp("l1", false)), IntegrityError);
  CHECK_THROWS_AS(Configuration::merge(a, a), IntegrityError);
}

TEST_CASE("medical labeling") {
  Model m = load_bundled("medical");
  const Configuration& init = m.init();
  CHECK(holds(m, init, Proposition{"isBreathing", {}}));
  CHECK_FALSE(holds(m, init, Proposition{"isPausing", {}}));
}

TEST_CASE("labeling ignores an extra clock object") {
  Model m = load_bundled("medical");
  Configuration with_clock = m.init();
  with_clock.add_object(ObjectInstance{"#clock-br", "Clock", {{"clock", AttrValue(TimeValue(0))}}});
  for (const char* p : {"isBreathing", "isPausing"}) {
    CHECK(holds(m, with_clock, Proposition{p, {}}) == holds(m, m.init(), Proposition{p, {}}));
  }
}

TEST_CASE("parameterized propositions") {
  Model m = load_bundled("traffic");
  Proposition ns = parse_proposition(m, "buttonPushed_NS");
  CHECK(ns.str() == "buttonPushed(NS)");
  CHECK(parse_proposition(m, "buttonPushed(NS)") == ns);
  CHECK_FALSE(holds(m, m.init(), ns));
  CHECK_THROWS_AS(parse_proposition(m, "nosuch"), ModelError);
  CHECK_THROWS_AS(parse_proposition(m, "buttonPushed_XX"), ModelError);
}

TEST_CASE("keys are injective on reachable states of bundled models") {
  for (const char* name : {"pulse", "blinker", "traffic"}) {
    Model m = load_bundled(name);
    std::vector<Configuration> seen;
    SearchOptions opts;
    search(m, GlobalState{m.init(), 0},
           [&](const GlobalState& s) {
             seen.push_back(s.config);
             return false;
           },
           1, opts);
    REQUIRE(seen.size() > 1);
    std::map<std::string, std::vector<std::string>> by_key;
    std::map<std::vector<std::string>, std::string> by_elements;
    for (const auto& c : seen) {
      auto els = elements(c);
      auto [it, fresh] = by_key.emplace(c.key(), els);
      if (!fresh) CHECK(it->second == els);
      auto [jt, fresh2] = by_elements.emplace(els, c.key());
      if (!fresh2) CHECK(jt->second == c.key());
    }
    INFO(name);
    CHECK(by_key.size() == by_elements.size());
  }
}

TEST_CASE("labeling depends only on the configuration") {
  Model m = load_bundled("traffic");
  Proposition p = parse_proposition(m, "pedLightGreen_EW");
  GlobalState a{m.init(), 0}, b{m.init(), 42};
  CHECK(holds(m, a.config, p) == holds(m, b.config, p));
}
