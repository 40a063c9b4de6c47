#include <random>

#include "catch_amalgamated.hpp"
#include "tickcheck/bundled.hpp"
#include "tickcheck/errors.hpp"
#include "tickcheck/mtl.hpp"

using namespace tickcheck;

namespace {

const Proposition P{"p", {}};
const Proposition Q{"q", {}};

Configuration marker(long k) {
  Configuration c;
  c.add_object(ObjectInstance{"s", "S", {{"n", AttrValue::integer(k)}}});
  return c;
}

long marker_of(const Configuration& c) { return c.objects().at(0).at("n").as_int().get_si(); }

// Positions 0..n with labels; durations[k] leads from k to k + 1.
struct Scenario {
  std::vector<std::pair<bool, bool>> labels;
  std::vector<mpq_class> durations;
  OraclePath::Kind kind = OraclePath::Kind::Deadlock;
  std::size_t loop_start = 0;
  mpq_class loop_duration = 0;

  std::size_t n() const { return durations.size(); }

  OraclePath path(std::size_t prefix) const {
    OraclePath out;
    out.path.initial = GlobalState{marker(0), 0};
    mpq_class t = 0;
    for (std::size_t k = 0; k < prefix; ++k) {
      t += durations[k];
      out.path.steps.push_back(
          Step{durations[k] == 0 ? "r" : "tick", TimeValue::rational(durations[k]),
               GlobalState{marker(static_cast<long>(k + 1)), TimeValue::rational(t)}, std::nullopt});
    }
    out.kind = prefix < n() ? OraclePath::Kind::Truncated : kind;
    out.loop_start = loop_start;
    out.loop_duration = TimeValue::rational(loop_duration);
    return out;
  }

  Labeling labeling() const {
    return [this](const Configuration& c, const Proposition& prop) {
      const auto& l = labels.at(static_cast<std::size_t>(marker_of(c)));
      return prop == P ? l.first : l.second;
    };
  }
};

// Direct unrolling of the infinite path; slow but obviously right.
class Naive {
 public:
  explicit Naive(const Scenario& s) : s_(s) {
    ls_ = s.kind == OraclePath::Kind::Deadlock ? s.n() : s.loop_start;
    mpq_class loop = s.kind == OraclePath::Kind::Deadlock ? mpq_class(0) : s.loop_duration;
    cum_.push_back(0);
    for (const auto& d : s.durations) cum_.push_back(cum_.back() + d);
    lap_ = cum_.back() - cum_[ls_] + loop;
    len_ = s.n() - ls_ + 1;
  }

  bool eval(const Formula& f, std::size_t i) const {
    switch (f.kind) {
      case Formula::Kind::True:
        return true;
      case Formula::Kind::Prop:
        return f.prop == P ? s_.labels[i].first : s_.labels[i].second;
      case Formula::Kind::Not:
        return !eval(*f.a, i);
      case Formula::Kind::And:
        return eval(*f.a, i) && eval(*f.b, i);
      case Formula::Kind::Until: {
        mpq_class horizon = f.upper.is_finite() ? f.upper.value() : f.lower.value();
        std::size_t laps = 3;
        if (lap_ > 0) laps += mpz_class(horizon / lap_).get_ui();
        std::size_t cap = i + s_.n() + laps * len_;
        for (std::size_t k = i; k <= cap; ++k) {
          auto [j, t] = at(k);
          mpq_class rel = t - cum_[i];
          if (f.upper.is_finite() && (f.upper_open ? rel >= f.upper.value() : rel > f.upper.value())) return false;
          if (rel >= f.lower.value() && eval(*f.b, j)) return true;
          if (!eval(*f.a, j)) return false;
        }
        return false;
      }
    }
    return false;
  }

 private:
  std::pair<std::size_t, mpq_class> at(std::size_t k) const {
    if (k <= s_.n()) return {k, cum_[k]};
    std::size_t m = k - ls_;
    std::size_t j = ls_ + m % len_;
    return {j, cum_[j] + lap_ * static_cast<unsigned long>(m / len_)};
  }

  const Scenario& s_;
  std::size_t ls_ = 0;
  std::size_t len_ = 1;
  std::vector<mpq_class> cum_;
  mpq_class lap_;
};

Scenario random_scenario(std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const mpq_class durations[] = {0, 0, 1, 2, mpq_class(1, 2)};
  Scenario s;
  std::size_t n = static_cast<std::size_t>(pick(6));
  for (std::size_t k = 0; k <= n; ++k) s.labels.emplace_back(pick(3) != 0, pick(3) == 0);
  for (std::size_t k = 0; k < n; ++k) s.durations.push_back(durations[pick(5)]);
  if (pick(3) == 0) {
    s.kind = OraclePath::Kind::Deadlock;
  } else {
    s.kind = OraclePath::Kind::Lasso;
    s.loop_start = static_cast<std::size_t>(pick(static_cast<int>(n) + 1));
    s.loop_duration = durations[pick(5)];
  }
  return s;
}

FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (depth == 0 || pick(4) == 0) {
    int k = pick(5);
    if (k == 0) return mtl::truth();
    return mtl::atom(k % 2 ? P : Q);
  }
  switch (pick(4)) {
    case 0:
      return mtl::negation(random_formula(rng, depth - 1));
    case 1:
      return mtl::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: {
      const TimeValue uppers[] = {TimeValue::infinity(), 1, 2, 3, TimeValue::rational(5, 2)};
      TimeValue upper = uppers[pick(5)];
      TimeValue lower = pick(3) == 0 ? TimeValue(1) : TimeValue(0);
      if (upper.is_finite() && upper < lower) lower = 0;
      bool open = upper.is_finite() && pick(2) == 0 && upper > lower;
      return mtl::until(random_formula(rng, depth - 1), random_formula(rng, depth - 1), lower, upper, open);
    }
  }
}

}  // namespace

TEST_CASE("until with an interval on a deadlocked path") {
  // s0 -2-> s1 -1-> s2, then time stands still.
  Scenario s;
  s.labels = {{true, false}, {true, false}, {false, true}};
  s.durations = {2, 1};
  OraclePath path = s.path(2);
  auto f = mtl::until(mtl::atom(P), mtl::atom(Q), 1, 3);
  CHECK(eval_path(s.labeling(), path, *f) == Truth::True);
  CHECK(eval_path(s.labeling(), path, *mtl::until(mtl::atom(P), mtl::atom(Q), 0, 3, true)) == Truth::False);
  CHECK(eval_path(s.labeling(), path, *mtl::until(mtl::atom(P), mtl::atom(Q), 0, 2)) == Truth::False);
  CHECK(eval_path(s.labeling(), path, *mtl::always(mtl::atom(Q), 3)) == Truth::True);
  CHECK(eval_path(s.labeling(), s.path(1), *f) == Truth::Unknown);
}

TEST_CASE("bad intervals are rejected") {
  CHECK_THROWS_AS(mtl::until(mtl::atom(P), mtl::atom(Q), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(mtl::until(mtl::atom(P), mtl::atom(Q), 3, 2), std::invalid_argument);
  Model m = load_bundled("pulse");
  Proposition armed{"armed", {}};
  Proposition lit{"lit", {}};
  CHECK_THROWS_AS(check_time_bounded_until(m, m.init(), SamplingStrategy::maximal(), armed, lit, 0),
                  std::invalid_argument);
}

TEST_CASE("pulse response properties over all paths") {
  Model m = load_bundled("pulse");
  Proposition armed{"armed", {}};
  Proposition lit{"lit", {}};
  OracleOptions opts;
  opts.time_bound = 20;
  auto strategy = SamplingStrategy::maximal();

  CHECK(check_all_paths(m, m.init(), strategy, mtl::bounded_response(armed, lit, 5), opts).verdict == Truth::True);

  OracleResult fails = check_all_paths(m, m.init(), strategy, mtl::bounded_response(armed, lit, 4), opts);
  CHECK(fails.verdict == Truth::False);
  REQUIRE(fails.counterexample);
  CHECK(eval_path(model_labeling(m), *fails.counterexample, *mtl::bounded_response(armed, lit, 4)) == Truth::False);

  CHECK(check_all_paths(m, m.init(), strategy, mtl::truth(), opts).verdict == Truth::True);
  CHECK(check_time_bounded_eventually(m, m.init(), strategy, lit, 5, opts).verdict == Truth::True);
  CHECK(check_time_bounded_eventually(m, m.init(), strategy, lit, 4, opts).verdict == Truth::False);
  CHECK(check_time_bounded_always(m, m.init(), strategy, armed, 4, opts).verdict == Truth::True);
  CHECK(check_time_bounded_always(m, m.init(), strategy, armed, 5, opts).verdict == Truth::False);
  CHECK(check_time_bounded_until(m, m.init(), strategy, armed, lit, 5, opts).verdict == Truth::False);
  CHECK(check_all_paths(m, m.init(), strategy, mtl::until(mtl::negation(mtl::atom(lit)), mtl::atom(lit), 0, 5), opts)
            .verdict == Truth::True);
  CHECK(check_time_bounded_until(m, m.init(), strategy, lit, armed, 1, opts).verdict == Truth::True);
}

TEST_CASE("a budget that is too small leaves the verdict open") {
  Model m = load_bundled("traffic");
  OracleOptions opts;
  opts.path_budget = 3;
  Proposition pushed = parse_proposition(m, "buttonPushed(NS)");
  Proposition green = parse_proposition(m, "pedLightGreen(NS)");
  OracleResult r = check_all_paths(m, m.init(), SamplingStrategy::maximal(), mtl::bounded_response(pushed, green, 15), opts);
  CHECK(r.budget_exhausted);
  CHECK(r.verdict == Truth::Unknown);
}

TEST_CASE("formula parsing and printing") {
  Model m = load_bundled("pulse");
  for (const char* text : {"[] (armed -> <>le(5) lit)", "(armed U[le 3] lit)", "[]lt(2) ~ armed", "(armed W lit)",
                           "((armed /\\ lit) \\/ true)", "<>[1, 3] lit", "false"}) {
    INFO(text);
    FormulaPtr f = mtl::parse(m, text);
    CHECK(mtl::parse(m, f->str())->str() == f->str());
  }
  CHECK(mtl::parse(m, "[] (armed -> <>le(5) lit)")->str() ==
        mtl::bounded_response({"armed", {}}, {"lit", {}}, 5)->str());
  CHECK_THROWS_AS(mtl::parse(m, "[] (armed -> "), ModelError);
  CHECK_THROWS_AS(mtl::parse(m, "nosuch"), ModelError);
  CHECK_THROWS_AS(mtl::parse(m, "armed U[le 0] lit"), ModelError);
}

TEST_CASE("path evaluation agrees with direct unrolling") {
  std::mt19937_64 rng(20261015);
  int determined_prefixes = 0;
  for (int round = 0; round < 3000; ++round) {
    Scenario s = random_scenario(rng);
    FormulaPtr f = random_formula(rng, 3);
    Naive naive(s);
    bool expected = naive.eval(*f, 0);
    INFO("round " << round << " formula " << f->str());
    Truth full = eval_path(s.labeling(), s.path(s.n()), *f);
    REQUIRE(full == (expected ? Truth::True : Truth::False));
    // Any prefix either agrees or says Unknown.
    for (std::size_t m = 0; m < s.n(); ++m) {
      Truth t = eval_path(s.labeling(), s.path(m), *f);
      if (t != Truth::Unknown) {
        ++determined_prefixes;
        REQUIRE(t == full);
      }
    }
  }
  CHECK(determined_prefixes > 0);
}

TEST_CASE("eventually and always are dual") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 1000; ++round) {
    Scenario s = random_scenario(rng);
    FormulaPtr f = random_formula(rng, 2);
    TimeValue r = static_cast<long>(rng() % 4 + 1);
    OraclePath path = s.path(s.n());
    Truth ev = eval_path(s.labeling(), path, *mtl::eventually(f, 0, r));
    Truth al = eval_path(s.labeling(), path, *mtl::always(mtl::negation(f), 0, r));
    REQUIRE(ev != Truth::Unknown);
    REQUIRE((ev == Truth::True) == (al == Truth::False));
  }
}

TEST_CASE("time bounds are monotone") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 1000; ++round) {
    Scenario s = random_scenario(rng);
    FormulaPtr f = random_formula(rng, 2);
    OraclePath path = s.path(s.n());
    for (long r = 1; r < 6; ++r) {
      if (eval_path(s.labeling(), path, *mtl::eventually(f, 0, r)) == Truth::True) {
        REQUIRE(eval_path(s.labeling(), path, *mtl::eventually(f, 0, r + 1)) == Truth::True);
        REQUIRE(eval_path(s.labeling(), path, *mtl::eventually(f)) == Truth::True);
      }
      if (eval_path(s.labeling(), path, *mtl::always(f, 0, r + 1)) == Truth::True) {
        REQUIRE(eval_path(s.labeling(), path, *mtl::always(f, 0, r)) == Truth::True);
      }
    }
  }
}
