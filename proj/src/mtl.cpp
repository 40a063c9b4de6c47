#include "tickcheck/mtl.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "lexer.hpp"

namespace tickcheck {

namespace {

std::string bound_text(const Formula& f) {
  if (f.lower.is_zero() && f.upper.is_infinite()) return "";
  if (f.lower.is_zero()) return (f.upper_open ? "lt(" : "le(") + f.upper.str() + ")";
  return "[" + f.lower.str() + ", " + f.upper.str() + (f.upper_open ? ")" : "]");
}

bool is_true(const Formula& f) { return f.kind == Formula::Kind::True; }

}  // namespace

std::string Formula::str() const {
  auto paren = [](const Formula& f) {
    std::string s = f.str();
    return f.kind == Kind::Prop || f.kind == Kind::True || s.front() == '(' ? s : "(" + s + ")";
  };
  switch (kind) {
    case Kind::True:
      return "true";
    case Kind::Prop:
      return prop.str();
    case Kind::Not: {
      if (a->kind == Kind::True) return "false";
      if (a->kind == Kind::Until && is_true(*a->a)) {
        const Formula& inner = *a->b;
        std::string body = inner.kind == Kind::Not ? paren(*inner.a) : "~ " + paren(inner);
        return "[]" + bound_text(*a) + " " + body;
      }
      if (a->kind == Kind::And && a->a->kind == Kind::Not && a->b->kind == Kind::Not) {
        const Formula& x = *a->a->a;
        const Formula& y = *a->b->a;
        if (x.kind == Kind::Not) return "(" + paren(*x.a) + " -> " + paren(y) + ")";
        return "(" + paren(x) + " \\/ " + paren(y) + ")";
      }
      return "~ " + paren(*a);
    }
    case Kind::And:
      return "(" + paren(*a) + " /\\ " + paren(*b) + ")";
    case Kind::Until: {
      if (is_true(*a)) return "<>" + bound_text(*this) + " " + paren(*b);
      std::string op = "U";
      if (!lower.is_zero()) {
        op += bound_text(*this);
      } else if (upper.is_finite()) {
        op += "[" + std::string(upper_open ? "lt " : "le ") + upper.str() + "]";
      }
      return "(" + paren(*a) + " " + op + " " + paren(*b) + ")";
    }
  }
  return "?";
}

namespace mtl {

namespace {
std::shared_ptr<Formula> make(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr truth() { return make(Formula::Kind::True); }

FormulaPtr atom(Proposition p) {
  auto f = make(Formula::Kind::Prop);
  f->prop = std::move(p);
  return f;
}

FormulaPtr negation(FormulaPtr g) {
  auto f = make(Formula::Kind::Not);
  f->a = std::move(g);
  return f;
}

FormulaPtr conj(FormulaPtr g, FormulaPtr h) {
  auto f = make(Formula::Kind::And);
  f->a = std::move(g);
  f->b = std::move(h);
  return f;
}

FormulaPtr until(FormulaPtr g, FormulaPtr h, TimeValue lower, TimeValue upper, bool upper_open) {
  if (upper.is_finite() && (upper.is_zero() || lower > upper || (upper_open && lower == upper))) {
    throw std::invalid_argument("invalid interval: need lower <= upper and upper > 0");
  }
  if (lower.is_infinite()) throw std::invalid_argument("invalid interval: lower bound must be finite");
  auto f = make(Formula::Kind::Until);
  f->a = std::move(g);
  f->b = std::move(h);
  f->lower = std::move(lower);
  f->upper = std::move(upper);
  f->upper_open = upper_open && f->upper.is_finite();
  return f;
}

FormulaPtr falsity() { return negation(truth()); }
FormulaPtr disj(FormulaPtr f, FormulaPtr g) { return negation(conj(negation(std::move(f)), negation(std::move(g)))); }
FormulaPtr implies(FormulaPtr f, FormulaPtr g) { return disj(negation(std::move(f)), std::move(g)); }

FormulaPtr eventually(FormulaPtr f, TimeValue lower, TimeValue upper, bool upper_open) {
  return until(truth(), std::move(f), std::move(lower), std::move(upper), upper_open);
}

FormulaPtr always(FormulaPtr f, TimeValue lower, TimeValue upper, bool upper_open) {
  return negation(eventually(negation(std::move(f)), std::move(lower), std::move(upper), upper_open));
}

FormulaPtr weak_until(FormulaPtr f, FormulaPtr g) { return disj(until(f, std::move(g)), always(f)); }

FormulaPtr bounded_response(const Proposition& p, const Proposition& q, const TimeValue& r) {
  return always(implies(atom(p), eventually(atom(q), 0, r)));
}

FormulaPtr min_separation(const Proposition& p, const TimeValue& r, bool strict) {
  return always(implies(atom(p), weak_until(atom(p), always(negation(atom(p)), 0, r, strict))));
}

namespace {

using detail::Tok;
using detail::Token;

class FormulaParser {
 public:
  FormulaParser(const Model& model, std::vector<Token> toks) : model_(model), toks_(std::move(toks)) {}

  FormulaPtr parse() {
    auto f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view s) {
    if (!peek().is(s)) return false;
    next();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelError({Diagnostic{Diagnostic::Kind::Syntax, peek().pos, "formula: " + msg}});
  }

  FormulaPtr implication() {
    auto f = disjunction();
    if (accept("->")) return implies(f, implication());
    return f;
  }

  FormulaPtr disjunction() {
    auto f = conjunction();
    while (accept("\\/")) f = disj(f, conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    auto f = unary();
    while (accept("/\\")) f = conj(f, unary());
    return f;
  }

  TimeValue number() {
    if (peek().kind != Tok::Number && !peek().is("INF")) fail("expected a time bound");
    return TimeValue::parse(next().text);
  }

  struct Interval {
    TimeValue lower = 0;
    TimeValue upper = TimeValue::infinity();
    bool open = false;
  };

  // le(r) | lt(r) | [le r] | [lt r] | [a, b]
  std::optional<Interval> interval() {
    Interval iv;
    if (peek().is("le") || peek().is("lt")) {
      iv.open = next().text == "lt";
      expect("(");
      iv.upper = number();
      expect(")");
      return iv;
    }
    if (!accept("[")) return std::nullopt;
    if (peek().is("le") || peek().is("lt")) {
      iv.open = next().text == "lt";
      iv.upper = number();
    } else {
      iv.lower = number();
      expect(",");
      iv.upper = number();
    }
    expect("]");
    return iv;
  }

  FormulaPtr checked(const std::function<FormulaPtr()>& build) {
    try {
      return build();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  FormulaPtr unary() {
    if (accept("~")) return negation(unary());
    if (peek().is("[]") || peek().is("<>")) {
      bool box = next().text == "[]";
      Interval iv = interval().value_or(Interval{});
      auto body = unary();
      return checked([&] {
        return box ? always(body, iv.lower, iv.upper, iv.open) : eventually(body, iv.lower, iv.upper, iv.open);
      });
    }
    auto f = primary();
    if (peek().is("U") || peek().is("W")) {
      bool weak = next().text == "W";
      auto iv = interval();
      auto g = primary();
      if (weak) {
        if (iv) fail("weak until takes no interval");
        return weak_until(f, g);
      }
      Interval i = iv.value_or(Interval{});
      return checked([&] { return until(f, g, i.lower, i.upper, i.open); });
    }
    return f;
  }

  FormulaPtr primary() {
    if (accept("(")) {
      auto f = implication();
      expect(")");
      return f;
    }
    if (accept("~")) return negation(primary());
    if (peek().is("[]") || peek().is("<>")) return unary();
    if (accept("true")) return truth();
    if (accept("false")) return falsity();
    if (peek().kind != Tok::Ident) fail("expected a proposition");
    std::string text = next().text;
    if (accept("(")) {
      text += "(";
      bool first = true;
      while (!peek().is(")")) {
        if (peek().kind == Tok::End) fail("expected ')'");
        if (!first) expect(",");
        if (!first) text += ",";
        text += next().text;
        first = false;
      }
      next();
      text += ")";
    }
    return atom(parse_proposition(model_, text));
  }

  const Model& model_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse(const Model& model, const std::string& text) {
  return FormulaParser(model, detail::tokenize(text)).parse();
}

}  // namespace mtl

const char* to_string(Truth t) {
  switch (t) {
    case Truth::True:
      return "true";
    case Truth::False:
      return "false";
    case Truth::Unknown:
      return "unknown";
  }
  return "?";
}

Labeling model_labeling(const Model& model) {
  return [&model](const Configuration& c, const Proposition& p) { return holds(model, c, p); };
}

namespace {

Truth t_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth t_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::False && b == Truth::False) return Truth::False;
  return Truth::Unknown;
}

Truth t_not(Truth a) {
  if (a == Truth::Unknown) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}

// Positions 0..n of a path; durations[k] leads from k to k + 1.
struct PathView {
  std::size_t n = 0;
  const std::vector<const TimeValue*>* durations = nullptr;
  OraclePath::Kind kind = OraclePath::Kind::Truncated;
  std::size_t loop_start = 0;
  TimeValue loop_duration;
  std::function<bool(std::size_t, const Proposition&)> label;
};

class Evaluator {
 public:
  explicit Evaluator(const PathView& v) : v_(v) {
    if (v_.kind == OraclePath::Kind::Deadlock) {
      v_.loop_start = v_.n;
      v_.loop_duration = 0;
    }
    cum_.resize(v_.n + 1);
    mpz_class scale = 1;
    for (std::size_t k = 0; k < v_.n; ++k) {
      const mpq_class& d = (*v_.durations)[k]->value();
      cum_[k + 1] = cum_[k] + d;
      scale = lcm(scale, d.get_den());
    }
    mpq_class loop = v_.kind == OraclePath::Kind::Truncated ? mpq_class(0) : v_.loop_duration.value();
    loop_ = loop;
    scale = lcm(scale, loop.get_den());
    if (v_.kind != OraclePath::Kind::Truncated) loop_total_ = TimeValue::rational(loop + cum_[v_.n] - cum_[v_.loop_start]);
    // Exact 64-bit copy of the times when they are small enough.
    mpq_class top = (cum_[v_.n] + loop) * scale;
    if (top < mpq_class(mpz_class(1) << 40)) {
      scale_ = scale;
      icum_.resize(v_.n + 1);
      for (std::size_t k = 0; k <= v_.n; ++k) icum_[k] = mpz_class(cum_[k] * scale).get_si();
      iloop_ = mpz_class(loop * scale).get_si();
    }
  }

  const std::vector<Truth>& table(const Formula& f) {
    auto it = memo_.find(&f);
    if (it != memo_.end()) return it->second;
    std::vector<Truth> t(v_.n + 1);
    switch (f.kind) {
      case Formula::Kind::True:
        std::fill(t.begin(), t.end(), Truth::True);
        break;
      case Formula::Kind::Prop:
        for (std::size_t i = 0; i <= v_.n; ++i) t[i] = v_.label(i, f.prop) ? Truth::True : Truth::False;
        break;
      case Formula::Kind::Not: {
        const auto& a = table(*f.a);
        for (std::size_t i = 0; i <= v_.n; ++i) t[i] = t_not(a[i]);
        break;
      }
      case Formula::Kind::And: {
        const auto& a = table(*f.a);
        const auto& b = table(*f.b);
        for (std::size_t i = 0; i <= v_.n; ++i) t[i] = t_and(a[i], b[i]);
        break;
      }
      case Formula::Kind::Until: {
        const auto& a = table(*f.a);
        const auto& b = table(*f.b);
        if (f.lower.is_zero() && f.upper.is_infinite()) {
          untimed_until(a, b, t);
        } else {
          if (icum_.empty()) {
            Bounds<mpq_class> bd{f.upper.is_finite(), f.upper_open, f.upper.is_finite() ? f.upper.value() : 0,
                                 f.lower.value()};
            for (std::size_t i = 0; i <= v_.n; ++i) t[i] = until_at(i, a, b, bd, cum_, loop_);
          } else {
            Bounds<std::int64_t> bd = scaled_bounds(f);
            for (std::size_t i = 0; i <= v_.n; ++i) t[i] = until_at(i, a, b, bd, icum_, iloop_);
          }
        }
        break;
      }
    }
    return memo_.emplace(&f, std::move(t)).first->second;
  }

 private:
  // Backward pass; on a cycle two laps reach the least fixpoint.
  void untimed_until(const std::vector<Truth>& a, const std::vector<Truth>& b, std::vector<Truth>& t) const {
    const std::size_t n = v_.n;
    auto step = [&](std::size_t i, Truth next) { return t_or(b[i], t_and(a[i], next)); };
    if (v_.kind == OraclePath::Kind::Truncated) {
      for (std::size_t i = n + 1; i-- > 0;) t[i] = step(i, i == n ? Truth::Unknown : t[i + 1]);
      return;
    }
    Truth after = Truth::False;
    for (int lap = 0; lap < 2; ++lap) {
      for (std::size_t i = n + 1; i-- > v_.loop_start;) t[i] = step(i, i == n ? after : t[i + 1]);
      after = t[v_.loop_start];
    }
    for (std::size_t i = v_.loop_start; i-- > 0;) t[i] = step(i, t[i + 1]);
  }

  template <class T>
  struct Bounds {
    bool bounded;
    bool open;
    T upper;
    T lower;
  };

  static std::int64_t clamp(const mpz_class& z) {
    static const mpz_class limit = mpz_class(1) << 62;
    if (z > limit) return mpz_class(limit).get_si();
    if (z < -limit) return mpz_class(-limit).get_si();
    return z.get_si();
  }

  // Integer times t satisfy t > U iff t > floor(U), t >= U iff t >= ceil(U).
  Bounds<std::int64_t> scaled_bounds(const Formula& f) const {
    auto floor_of = [](const mpq_class& q) {
      mpz_class z;
      mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      return z;
    };
    auto ceil_of = [](const mpq_class& q) {
      mpz_class z;
      mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      return z;
    };
    Bounds<std::int64_t> bd{f.upper.is_finite(), f.upper_open, 0, clamp(ceil_of(f.lower.value() * scale_))};
    if (bd.bounded) {
      mpq_class u = f.upper.value() * scale_;
      bd.upper = clamp(f.upper_open ? ceil_of(u) : floor_of(u));
    }
    return bd;
  }

  // Walks forward from i; t is the time since position i.
  template <class T>
  Truth until_at(std::size_t i, const std::vector<Truth>& a, const std::vector<Truth>& b, const Bounds<T>& bd,
                 const std::vector<T>& cum, const T& loop_step) const {
    Truth result = Truth::False;
    Truth prefix = Truth::True;
    T base = -cum[i];
    std::size_t j = i;
    std::size_t settled = 0;
    const std::size_t loop_len = v_.n - v_.loop_start + 1;
    const bool zero_loop = v_.kind != OraclePath::Kind::Truncated && loop_total_.is_zero();
    while (true) {
      T t = cum[j] + base;
      if (bd.bounded && (bd.open ? t >= bd.upper : t > bd.upper)) return result;
      bool reached = t >= bd.lower;
      if (reached) result = t_or(result, t_and(prefix, b[j]));
      if (result == Truth::True) return result;
      prefix = t_and(prefix, a[j]);
      if (prefix == Truth::False) return result;
      if (j == v_.n && v_.kind == OraclePath::Kind::Truncated) return t_or(result, Truth::Unknown);
      // Inside the cycle nothing new can happen once a full lap has been
      // made with the lower bound reached (or with no time passing at all).
      if (v_.kind != OraclePath::Kind::Truncated && j >= v_.loop_start && (reached || zero_loop)) {
        if (++settled > loop_len) return result;
      }
      if (j < v_.n) {
        ++j;
      } else {
        base += cum[v_.n] - cum[v_.loop_start] + loop_step;
        j = v_.loop_start;
      }
    }
  }

  PathView v_;
  std::vector<mpq_class> cum_;  // elapsed time at each position
  TimeValue loop_total_;
  mpq_class loop_;
  mpz_class scale_;
  std::vector<std::int64_t> icum_;  // cum_ * scale_, empty if too large
  std::int64_t iloop_ = 0;
  std::unordered_map<const Formula*, std::vector<Truth>> memo_;
};

void collect_props(const Formula& f, std::vector<Proposition>& out) {
  if (f.kind == Formula::Kind::Prop) {
    for (const auto& p : out) {
      if (p == f.prop) return;
    }
    out.push_back(f.prop);
  }
  if (f.a) collect_props(*f.a, out);
  if (f.b) collect_props(*f.b, out);
}

}  // namespace

Truth eval_path(const Labeling& label, const OraclePath& path, const Formula& f) {
  std::vector<const TimeValue*> durations;
  for (const auto& s : path.path.steps) durations.push_back(&s.duration);
  PathView v;
  v.n = path.path.steps.size();
  v.durations = &durations;
  v.kind = path.kind;
  v.loop_start = path.loop_start;
  v.loop_duration = path.loop_duration;
  v.label = [&](std::size_t i, const Proposition& p) { return label(path.path.state(i).config, p); };
  if (v.kind == OraclePath::Kind::Lasso && v.loop_start > v.n) throw std::invalid_argument("loop start beyond path end");
  Evaluator ev(v);
  return ev.table(f)[0];
}

namespace {

struct Enumerator {
  Enumerator(const Model& m, const SamplingStrategy& s, const std::vector<FormulaPtr>& f, const OracleOptions& o,
             Labeling l)
      : model(m), strategy(s), formulas(f), options(o), label(std::move(l)) {}

  const Model& model;
  const SamplingStrategy& strategy;
  const std::vector<FormulaPtr>& formulas;
  const OracleOptions& options;
  Labeling label;
  std::vector<Proposition> props;

  struct Frame {
    const GlobalState* state;
    std::string key;
    std::vector<char> labels;
    std::vector<Step> succ;
    bool expanded = false;
    bool truncation_checked = false;
    std::size_t next = 0;
  };

  std::vector<Frame> frames;
  std::vector<const TimeValue*> durations;
  std::vector<const Step*> steps;
  std::unordered_map<std::string, std::vector<std::size_t>> positions;
  // Successors per state, computed at elapsed time 0.
  std::unordered_map<std::string, std::vector<Step>> cache;
  std::vector<OracleResult> results;
  std::vector<bool> unknown;
  std::size_t decided_false = 0;

  void push(const GlobalState* s, const Step* via) {
    Frame f;
    f.state = s;
    f.key = s->config.key();
    for (const auto& p : props) f.labels.push_back(label(s->config, p) ? 1 : 0);
    positions[f.key].push_back(frames.size());
    if (via) {
      durations.push_back(&via->duration);
      steps.push_back(via);
    }
    frames.push_back(std::move(f));
  }

  void pop() {
    auto& pos = positions[frames.back().key];
    pos.pop_back();
    if (pos.empty()) positions.erase(frames.back().key);
    frames.pop_back();
    if (!durations.empty()) {
      durations.pop_back();
      steps.pop_back();
    }
  }

  // Formula nodes outlive the run, so their propositions can be keyed by address.
  std::unordered_map<const Proposition*, std::size_t> prop_slots;

  std::size_t prop_index(const Proposition& p) {
    auto it = prop_slots.find(&p);
    if (it != prop_slots.end()) return it->second;
    for (std::size_t i = 0; i < props.size(); ++i) {
      if (props[i] == p) return prop_slots.emplace(&p, i).first->second;
    }
    throw InternalError("proposition missing from oracle table");
  }

  OraclePath materialize(OraclePath::Kind kind, std::size_t loop_start, const Step* closing) const {
    OraclePath out;
    out.kind = kind;
    out.path.initial = *frames[0].state;
    for (const Step* s : steps) out.path.steps.push_back(*s);
    out.path.end = kind == OraclePath::Kind::Deadlock ? TimedPath::End::Deadlocked : TimedPath::End::Truncated;
    out.loop_start = loop_start;
    if (closing) {
      out.loop_duration = closing->duration;
      out.loop_label = closing->label;
    }
    return out;
  }

  void evaluate(OraclePath::Kind kind, std::size_t loop_start, const Step* closing) {
    PathView v;
    v.n = frames.size() - 1;
    v.durations = &durations;
    v.kind = kind;
    v.loop_start = loop_start;
    v.loop_duration = closing ? closing->duration : TimeValue(0);
    v.label = [&](std::size_t i, const Proposition& p) { return frames[i].labels[prop_index(p)] != 0; };
    Evaluator ev(v);
    for (std::size_t k = 0; k < formulas.size(); ++k) {
      if (results[k].verdict == Truth::False) continue;
      Truth t = ev.table(*formulas[k])[0];
      if (t == Truth::False) {
        results[k].verdict = Truth::False;
        results[k].counterexample = materialize(kind, loop_start, closing);
        ++decided_false;
      } else if (t == Truth::Unknown) {
        unknown[k] = true;
      }
    }
  }

  void run(const GlobalState& init) {
    results.assign(formulas.size(), OracleResult{});
    unknown.assign(formulas.size(), false);
    for (const auto& f : formulas) collect_props(*f, props);
    std::size_t paths = 0;
    bool exhausted = false;
    push(&init, nullptr);
    while (!frames.empty()) {
      if (decided_false == formulas.size()) break;
      if (paths >= options.path_budget) {
        exhausted = true;
        break;
      }
      Frame& top = frames.back();
      if (!top.expanded) {
        top.expanded = true;
        auto it = cache.find(top.key);
        if (it == cache.end()) {
          it = cache.emplace(top.key, successors(model, GlobalState{top.state->config, 0}, strategy)).first;
        }
        top.succ = it->second;
        for (auto& s : top.succ) s.target.elapsed = top.state->elapsed + s.duration;
        if (top.succ.empty()) {
          evaluate(OraclePath::Kind::Deadlock, 0, nullptr);
          ++paths;
          pop();
          continue;
        }
      }
      if (top.next == top.succ.size()) {
        pop();
        continue;
      }
      const Step* step = &top.succ[top.next++];
      if (step->target.elapsed > options.time_bound || steps.size() >= options.step_bound) {
        if (!top.truncation_checked) {
          top.truncation_checked = true;
          evaluate(OraclePath::Kind::Truncated, 0, nullptr);
          ++paths;
        }
        continue;
      }
      auto it = positions.find(step->target.config.key());
      if (it != positions.end()) {
        evaluate(OraclePath::Kind::Lasso, it->second.back(), step);
        ++paths;
        if (it->second.size() >= options.max_visits) continue;
      }
      push(&step->target, step);
    }
    for (std::size_t k = 0; k < results.size(); ++k) {
      results[k].paths = paths;
      results[k].budget_exhausted = exhausted;
      if (results[k].verdict == Truth::False) continue;
      results[k].verdict = unknown[k] || exhausted ? Truth::Unknown : Truth::True;
    }
  }
};

}  // namespace

std::vector<OracleResult> check_all_paths(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                          const std::vector<FormulaPtr>& formulas, const OracleOptions& options,
                                          const Labeling& label) {
  Enumerator e(model, strategy, formulas, options, label ? label : model_labeling(model));
  GlobalState start{init, 0};
  e.run(start);
  return std::move(e.results);
}

OracleResult check_all_paths(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                             const FormulaPtr& formula, const OracleOptions& options, const Labeling& label) {
  return check_all_paths(model, init, strategy, std::vector<FormulaPtr>{formula}, options, label)[0];
}

OracleResult check_time_bounded_until(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                      const Proposition& p, const Proposition& q, const TimeValue& r,
                                      const OracleOptions& options) {
  return check_all_paths(model, init, strategy, mtl::until(mtl::atom(p), mtl::atom(q), 0, r), options);
}

OracleResult check_time_bounded_eventually(const Model& model, const Configuration& init,
                                           const SamplingStrategy& strategy, const Proposition& p, const TimeValue& r,
                                           const OracleOptions& options) {
  return check_all_paths(model, init, strategy, mtl::eventually(mtl::atom(p), 0, r), options);
}

OracleResult check_time_bounded_always(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                       const Proposition& p, const TimeValue& r, const OracleOptions& options) {
  return check_all_paths(model, init, strategy, mtl::always(mtl::atom(p), 0, r), options);
}

}  // namespace tickcheck
