// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <array>
#include <chrono>
#include <cstdio>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "random_model.hpp"
#include "tickcheck/checker.hpp"
#include "tickcheck/errors.hpp"
#include "tickcheck/mtl.hpp"
#include "tickcheck/transform.hpp"

using namespace tickcheck;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kModels = 250;
constexpr std::size_t kMaxStates = 500;
constexpr std::size_t kPathBudget = 20000;
constexpr std::array<long, 4> kBounds = {1, 2, 3, 5};
constexpr std::size_t kEngineConfigs = 1000;

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << "  " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double secs) {
  std::ostringstream os;
  os.precision(3);
  os << secs << " s";
  return os.str();
}

struct Cli {
  int code = -1;
  std::string out;
  double secs = 0;
};

Cli run_cli(const std::string& args) {
  Cli r;
  auto t0 = Clock::now();
  std::string cmd = std::string("\"") + TICKCHECK_CLI + "\" " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = ::pclose(pipe);
  r.secs = seconds_since(t0);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::optional<TimeValue> observer_clock(const std::string& out) {
  auto at = out.rfind("observer clock: ");
  if (at == std::string::npos) return std::nullopt;
  at += 16;
  return TimeValue::parse(out.substr(at, out.find(' ', at) - at));
}

// Reachable transition graph, keyed by configuration.
struct Graph {
  std::set<std::string> states;
  std::set<std::string> edges;
};

Graph graph(const Model& m, const Configuration& init, bool instrumented) {
  Graph g;
  auto key = [&](const Configuration& c) { return instrumented ? project(c).key() : c.key(); };
  std::set<std::string> seen{init.key()};
  std::vector<GlobalState> todo{GlobalState{init, 0}};
  g.states.insert(key(init));
  while (!todo.empty()) {
    GlobalState s = std::move(todo.back());
    todo.pop_back();
    std::string from = key(s.config);
    for (auto& step : successors(m, s, SamplingStrategy::maximal())) {
      std::string to = key(step.target.config);
      g.states.insert(to);
      g.edges.insert(from + "|" + step.label + "|" + step.duration.str() + "|" + to);
      if (seen.insert(step.target.config.key()).second) todo.push_back(std::move(step.target));
    }
  }
  return g;
}

std::multiset<std::string> local_steps(const std::vector<Step>& steps, bool instrumented) {
  std::multiset<std::string> out;
  for (const auto& s : steps) {
    out.insert(s.label + "|" + s.duration.str() + "|" +
               (instrumented ? project(s.target.config).key() : s.target.config.key()));
  }
  return out;
}

// Criteria 1 and 4; also counts tick-invariance alarms for criterion 7.
std::size_t differential(const std::vector<testing::RandomModel>& models) {
  auto t0 = Clock::now();
  std::size_t holds = 0, fails = 0, open = 0, disagreements = 0, exclusivity = 0, alarms = 0, searches = 0;
  std::string first_problem;
  for (const auto& rm : models) {
    std::vector<FormulaPtr> formulas;
    for (long r : kBounds) formulas.push_back(mtl::bounded_response(rm.p, rm.q, r));
    for (long r : kBounds) formulas.push_back(mtl::min_separation(rm.p, r, true));
    OracleOptions oo;
    oo.path_budget = kPathBudget;
    auto oracle = check_all_paths(rm.model, rm.init, SamplingStrategy::maximal(), formulas, oo);

    SearchOptions so;
    so.assert_exclusivity = true;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      long r = kBounds[i % kBounds.size()];
      Verdict v;
      ++searches;
      try {
        v = i < kBounds.size() ? check_bounded_response(rm.model, rm.init, rm.p, rm.q, r, so, true)
                               : check_min_separation(rm.model, rm.init, rm.p, r, so);
      } catch (const InternalError& e) {
        ++exclusivity;
        if (first_problem.empty()) first_problem = "seed " + std::to_string(rm.seed) + ": " + e.what();
        continue;
      }
      if (v.kind == Verdict::Kind::PreconditionFailed) ++alarms;
      if (oracle[i].verdict == Truth::Unknown) {
        ++open;
        continue;
      }
      (oracle[i].verdict == Truth::True ? holds : fails)++;
      bool agree = oracle[i].verdict == Truth::True ? v.kind == Verdict::Kind::Satisfied
                                                     : v.kind == Verdict::Kind::Counterexample;
      if (!agree) {
        ++disagreements;
        if (first_problem.empty()) {
          first_problem = "seed " + std::to_string(rm.seed) + " " + formulas[i]->str() + ": oracle " +
                          to_string(oracle[i].verdict) + ", checker " + to_string(v.kind);
        }
      }
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << models.size() << " models, " << holds + fails << " determined (" << holds << " hold, " << fails << " fail), "
    << open << " undetermined, " << disagreements << " disagreements, " << fmt(secs);
  if (!first_problem.empty()) d << "; " << first_problem;
  report(1, "differential correctness", models.size() >= 200 && disagreements == 0 && exclusivity == 0 && holds > 0 &&
                                            fails > 0 && secs < 300,
         d.str());
  report(4, "rule-variant exclusivity", exclusivity == 0,
         std::to_string(exclusivity) + " violations over " + std::to_string(searches) + " instrumented searches");
  return alarms;
}

void bisimulation(const std::vector<testing::RandomModel>& models) {
  auto t0 = Clock::now();
  std::size_t failed = 0, instances = 0;
  std::string first;
  for (const auto& rm : models) {
    Graph plain = graph(rm.model, rm.init, false);
    for (int kind = 0; kind < 2; ++kind) {
      for (long r : kBounds) {
        TransformResult t = kind == 0 ? br_transform(rm.model, rm.init, rm.p, rm.q, r)
                                      : ms_transform(rm.model, rm.init, rm.p, r);
        ++instances;
        Graph g = graph(t.model, t.init, true);
        bool ok = g.states == plain.states && g.edges == plain.edges;
        // Every instrumented state also simulates its projection step for step.
        if (ok) {
          std::vector<GlobalState> todo{GlobalState{t.init, 0}};
          std::set<std::string> seen{t.init.key()};
          while (ok && !todo.empty()) {
            GlobalState s = std::move(todo.back());
            todo.pop_back();
            auto mine = successors(t.model, s, SamplingStrategy::maximal());
            auto theirs = successors(rm.model, GlobalState{project(s.config), s.elapsed}, SamplingStrategy::maximal());
            ok = local_steps(mine, true) == local_steps(theirs, false);
            for (auto& step : mine) {
              if (seen.insert(step.target.config.key()).second) todo.push_back(std::move(step.target));
            }
          }
        }
        if (!ok) {
          ++failed;
          if (first.empty()) first = "; first failure: seed " + std::to_string(rm.seed);
        }
      }
    }
  }
  double secs = seconds_since(t0);
  report(2, "projected graph isomorphism", failed == 0 && secs < 300,
         std::to_string(failed) + " failures over " + std::to_string(instances) + " instrumented models, " +
             fmt(secs) + first);
}

void termination(const std::vector<testing::RandomModel>& models) {
  auto t0 = Clock::now();
  std::size_t timeouts = 0, undecided = 0, runs = 0;
  double slowest = 0;
  for (const auto& rm : models) {
    for (long r : kBounds) {
      ++runs;
      auto done = std::make_shared<std::promise<Verdict::Kind>>();
      auto result = done->get_future();
      auto start = Clock::now();
      std::thread([done, &rm, r] {
        try {
          done->set_value(check_bounded_response(rm.model, rm.init, rm.p, rm.q, r, SearchOptions{}).kind);
        } catch (...) {
          done->set_exception(std::current_exception());
        }
      }).detach();
      if (result.wait_for(std::chrono::seconds(60)) != std::future_status::ready) {
        ++timeouts;
        continue;
      }
      slowest = std::max(slowest, seconds_since(start));
      try {
        auto k = result.get();
        if (k != Verdict::Kind::Satisfied && k != Verdict::Kind::Counterexample) ++undecided;
      } catch (...) {
        ++undecided;
      }
    }
  }
  report(3, "termination", timeouts == 0 && undecided == 0,
         std::to_string(runs) + " unbounded searches, " + std::to_string(timeouts) + " timeouts, " +
             std::to_string(undecided) + " without a verdict, slowest " + fmt(slowest) + ", total " +
             fmt(seconds_since(t0)));
}

void medical() {
  // The ventilator drifts 10% slow: a nominal 2000 ms pause lasts 2000 / (9/10).
  const TimeValue expected = TimeValue::rational(mpq_class(2000) / mpq_class(9, 10));
  std::ostringstream d;
  bool ok = true;

  Cli br = run_cli("br medical -p isPausing -q isBreathing -r 2000");
  auto clock = observer_clock(br.out);
  ok = ok && br.code == 1 && br.secs < 10 && clock && *clock == expected;
  d << "r=2000 exit " << br.code << " in " << fmt(br.secs) << ", observer clock " << (clock ? clock->str() : "?");

  // Pause length read off the trace: from the step that stops breathing to the end.
  Cli trace = run_cli("br medical -p isPausing -q isBreathing -r 2000 --format json-trace");
  TimeValue pause;
  try {
    auto j = nlohmann::json::parse(trace.out);
    const auto& steps = j["steps"];
    std::size_t start = 0;
    for (std::size_t i = 1; i < steps.size(); ++i) {
      bool before = steps[i - 1]["state"].get<std::string>().find("state : breathing") != std::string::npos;
      bool after = steps[i]["state"].get<std::string>().find("state : stopBreathing") != std::string::npos;
      if (before && after) start = i;
    }
    pause = subtract(TimeValue::parse(steps.back()["elapsed"].get<std::string>()),
                     TimeValue::parse(steps[start]["elapsed"].get<std::string>()));
  } catch (const std::exception&) {
    ok = false;
  }
  ok = ok && pause == expected;
  d << ", final pause " << pause.str() << " (expected " << expected.str() << ")";

  Cli bounded = run_cli("br medical -p isPausing -q isBreathing -r 2500 --time-bound 1000000");
  ok = ok && bounded.code == 2;
  d << "; r=2500 time-bounded exit " << bounded.code << " in " << fmt(bounded.secs);

  Cli ms = run_cli("ms medical -p isPausing -r 600000");
  ok = ok && ms.code == 1 && ms.secs < 60;
  d << "; ms r=600000 exit " << ms.code << " in " << fmt(ms.secs);
  report(5, "medical regression", ok, d.str());
}

void traffic() {
  Cli ok15 = run_cli("br traffic -p \"buttonPushed(NS)\" -q \"pedLightGreen(NS)\" -r 15");
  Cli bad14 = run_cli("br traffic -p \"buttonPushed(NS)\" -q \"pedLightGreen(NS)\" -r 14");
  auto clock = observer_clock(bad14.out);
  bool ok = ok15.code == 0 && ok15.secs < 300 && bad14.code == 1 && bad14.secs < 300 && clock && *clock > 14;
  report(6, "traffic regression", ok,
         "r=15 exit " + std::to_string(ok15.code) + " in " + fmt(ok15.secs) + "; r=14 exit " +
             std::to_string(bad14.code) + " in " + fmt(bad14.secs) + ", violating clock " +
             (clock ? clock->str() : "?"));
}

void tick_invariance(std::size_t random_alarms) {
  std::string fixtures = TICKCHECK_FIXTURES;
  Cli bad = run_cli("br \"" + fixtures + "/expiring.rtm\" -p counting -q expired -r 5");
  Cli good = run_cli("br \"" + fixtures + "/steady.rtm\" -p counting -q finished -r 10");
  bool witness = bad.out.find("Witness path:") != std::string::npos && bad.out.find("=>[tick") != std::string::npos;
  report(7, "tick-invariance monitor", bad.code == 4 && witness && good.code == 0 && random_alarms == 0,
         "timer-reading fixture exit " + std::to_string(bad.code) + (witness ? " with" : " without") +
             " a tick witness; invariant fixture exit " + std::to_string(good.code) + "; " +
             std::to_string(random_alarms) + " false positives on random models");
}

Configuration subset(const Configuration& c, const std::vector<bool>& objects, const std::vector<bool>& messages) {
  Configuration out;
  for (std::size_t i = 0; i < c.objects().size(); ++i) {
    if (objects[i]) out.add_object(c.objects()[i]);
  }
  std::vector<MessageInstance> ms;
  for (std::size_t i = 0; i < c.messages().size(); ++i) {
    if (messages[i]) ms.push_back(c.messages()[i]);
  }
  out.replace_messages(std::move(ms));
  return out;
}

void engine_laws(const std::vector<testing::RandomModel>& models) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  std::size_t configs = 0, failed = 0, paths = 0;
  std::string first;
  auto fail = [&](const std::string& what, std::uint64_t seed) {
    ++failed;
    if (first.empty()) first = "; first failure: " + what + " (seed " + std::to_string(seed) + ")";
  };
  for (const auto& rm : models) {
    std::vector<GlobalState> todo{GlobalState{rm.init, 0}};
    std::set<std::string> seen{rm.init.key()};
    while (!todo.empty()) {
      GlobalState s = std::move(todo.back());
      todo.pop_back();
      const Configuration& c = s.config;
      ++configs;
      TimeValue m = mte(rm.model, c);
      if (!(delta(rm.model, c, 0) == c)) fail("delta(C, 0) != C", rm.seed);

      std::vector<bool> left_objects, left_messages;
      for (std::size_t i = 0; i < c.objects().size(); ++i) left_objects.push_back(rng() % 2);
      for (std::size_t i = 0; i < c.messages().size(); ++i) left_messages.push_back(rng() % 2);
      std::vector<bool> right_objects(left_objects.size()), right_messages(left_messages.size());
      for (std::size_t i = 0; i < left_objects.size(); ++i) right_objects[i] = !left_objects[i];
      for (std::size_t i = 0; i < left_messages.size(); ++i) right_messages[i] = !left_messages[i];
      Configuration a = subset(c, left_objects, left_messages);
      Configuration b = subset(c, right_objects, right_messages);
      if (!(Configuration::merge(a, b) == c)) fail("split does not recombine", rm.seed);
      if (!(min(mte(rm.model, a), mte(rm.model, b)) == m)) fail("mte(A + B) != min", rm.seed);
      std::vector<TimeValue> ts{TimeValue::rational(1, 2), 1, 3};
      if (m.is_finite()) ts.push_back(m);
      for (const auto& t : ts) {
        if (m.is_finite() && t > m) continue;
        if (!(delta(rm.model, c, t) == Configuration::merge(delta(rm.model, a, t), delta(rm.model, b, t)))) {
          fail("delta(A + B) != delta(A) + delta(B)", rm.seed);
        }
      }
      for (const auto& strat : {SamplingStrategy::maximal(), SamplingStrategy::fixed(1),
                                SamplingStrategy::fixed(TimeValue::rational(5, 2)), SamplingStrategy::maximal(2)}) {
        for (const auto& tick : tick_successors(rm.model, s, strat)) {
          if (tick.duration > m || tick.duration.is_zero()) fail("tick duration outside (0, mte]", rm.seed);
        }
      }
      for (auto& step : successors(rm.model, s, SamplingStrategy::maximal())) {
        if (seen.insert(step.target.config.key()).second) todo.push_back(std::move(step.target));
      }
    }

    // Duality on simulated paths: <>le(r) f == ~ []le(r) ~ f.
    SimulateOptions so;
    so.policy = ChoicePolicy::Random;
    so.seed = rm.seed;
    OraclePath op;
    op.path = simulate(rm.model, GlobalState{rm.init, 0}, SamplingStrategy::maximal(), 12, so);
    op.kind = op.path.end == TimedPath::End::Deadlocked ? OraclePath::Kind::Deadlock : OraclePath::Kind::Truncated;
    Labeling label = model_labeling(rm.model);
    for (long r : kBounds) {
      for (const auto& f : {mtl::atom(rm.p), mtl::conj(mtl::atom(rm.p), mtl::negation(mtl::atom(rm.q))),
                            mtl::until(mtl::atom(rm.q), mtl::atom(rm.p), 0, r)}) {
        Truth ev = eval_path(label, op, *mtl::eventually(f, 0, r));
        Truth al = eval_path(label, op, *mtl::always(mtl::negation(f), 0, r));
        Truth ev_all = eval_path(label, op, *mtl::eventually(f));
        Truth al_all = eval_path(label, op, *mtl::always(mtl::negation(f)));
        auto neg = [](Truth t) { return t == Truth::True ? Truth::False : t == Truth::False ? Truth::True : t; };
        if (ev != neg(al) || ev_all != neg(al_all)) fail("eventually/always duality", rm.seed);
      }
    }
    ++paths;
  }
  double secs = seconds_since(t0);
  report(8, "engine laws", failed == 0 && configs >= kEngineConfigs && secs < 60,
         std::to_string(configs) + " configurations, " + std::to_string(paths) + " simulated paths, " +
             std::to_string(failed) + " failures, " + fmt(secs) + first);
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  auto models = testing::random_models(kModels, 1, kMaxStates);
  std::size_t states = 0;
  for (const auto& rm : models) states += rm.states;
  std::cout << models.size() << " random models (seed " << models.front().seed << " to " << models.back().seed << ", "
            << states << " reachable states in total)" << std::endl;

  std::size_t alarms = differential(models);
  bisimulation(models);
  termination(models);
  medical();
  traffic();
  tick_invariance(alarms);
  engine_laws(models);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << fmt(seconds_since(t0)) << std::endl;
  return failures == 0 ? 0 : 1;
}
