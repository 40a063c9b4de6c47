#include "tickcheck/engine.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace tickcheck {

SamplingStrategy SamplingStrategy::fixed(TimeValue delta) {
  if (delta.is_infinite() || delta.is_zero()) throw std::invalid_argument("fixed sampling needs a finite positive step");
  SamplingStrategy s;
  s.kind_ = Kind::Fixed;
  s.delta_ = std::move(delta);
  return s;
}

SamplingStrategy SamplingStrategy::maximal(std::optional<TimeValue> default_when_inf) {
  if (default_when_inf && (default_when_inf->is_infinite() || default_when_inf->is_zero())) {
    throw std::invalid_argument("default tick for maximal sampling must be finite and positive");
  }
  SamplingStrategy s;
  s.kind_ = Kind::Maximal;
  s.default_ = std::move(default_when_inf);
  return s;
}

SamplingStrategy SamplingStrategy::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::optional<TimeValue> arg;
  if (colon != std::string::npos) arg = TimeValue::parse(text.substr(colon + 1));
  if (head == "maximal") return maximal(arg);
  if (head == "fixed" && arg) return fixed(*arg);
  throw std::invalid_argument("unknown sampling strategy '" + text + "'");
}

std::string SamplingStrategy::str() const {
  if (kind_ == Kind::Fixed) return "fixed:" + delta_.str();
  return default_ ? "maximal:" + default_->str() : "maximal";
}

namespace {

void encode_bindings(const Bindings& b, std::string& out) {
  for (const auto& [name, value] : b) {
    out += name;
    out += '=';
    value.encode(out);
    out += ';';
  }
}

std::string describe(const Bindings& b) {
  std::string out = "{";
  for (const auto& [name, value] : b) {
    if (out.size() > 1) out += ", ";
    out += name + " = " + value.str();
  }
  return out + "}";
}

bool uses_post(const Expr& e) {
  if (e.kind == ExprKind::PropAtom && e.scope == PropScope::Post) return true;
  for (const auto& a : e.args) {
    if (uses_post(*a)) return true;
  }
  return false;
}

struct Matcher {
  const Model& model;
  const RuleDecl& rule;
  const Configuration& config;
  EvalContext ctx;
  std::vector<Match> out;
  std::set<std::string> seen;
  std::vector<bool> used_obj, used_msg;

  void run(std::size_t i, Match& cur, std::vector<Deferred>& deferred) {
    if (i == rule.lhs.size()) {
      if (!check_deferred(deferred, cur.bindings, ctx)) return;
      std::string key;
      encode_bindings(cur.bindings, key);
      key += '|';
      for (auto o : cur.objects) key += std::to_string(o) + ",";
      key += '|';
      std::vector<std::string> msgs;
      for (auto m : cur.messages) {
        std::string s;
        config.messages()[m].encode(s);
        msgs.push_back(std::move(s));
      }
      std::sort(msgs.begin(), msgs.end());
      for (const auto& s : msgs) key += s + ";";
      if (seen.insert(key).second) out.push_back(cur);
      return;
    }
    if (const auto* op = std::get_if<ObjectPattern>(&rule.lhs[i].v)) {
      const auto& objs = config.objects();
      for (std::size_t k = 0; k < objs.size(); ++k) {
        if (used_obj[k]) continue;
        Match next = cur;
        std::vector<Deferred> d = deferred;
        if (!match_object(*op, objs[k], next.bindings, ctx, d)) continue;
        next.objects.push_back(k);
        used_obj[k] = true;
        run(i + 1, next, d);
        used_obj[k] = false;
      }
      return;
    }
    const auto& mp = std::get<MessagePattern>(rule.lhs[i].v);
    const auto& msgs = config.messages();
    for (std::size_t k = 0; k < msgs.size(); ++k) {
      if (used_msg[k] || !msgs[k].deliverable()) continue;
      Match next = cur;
      std::vector<Deferred> d = deferred;
      if (!match_message(mp, msgs[k], next.bindings, ctx, d)) continue;
      next.messages.push_back(k);
      used_msg[k] = true;
      run(i + 1, next, d);
      used_msg[k] = false;
    }
  }
};

struct Emission {
  const MessageEmit* emit;
  std::vector<AttrValue> args;
  std::vector<TimeValue> delays;
};

Configuration apply(const Model& model, const RuleDecl& rule, const Configuration& config, const Match& m,
                    const std::vector<Emission>& emissions, const std::vector<std::size_t>& choice) {
  EvalContext ctx;
  ctx.model = &model;
  ctx.config = &config;
  Configuration target = config;
  for (const auto& eff : rule.rhs) {
    const auto* oe = std::get_if<ObjectEffect>(&eff.v);
    if (!oe || oe->updates.empty()) continue;
    AttrValue oid = evaluate(*oe->oid, m.bindings, ctx);
    const ClassDecl* cls = model.find_class(oe->cls);
    std::size_t idx = 0;
    while (idx < target.objects().size() && target.objects()[idx].oid != oid.as_oid().name) ++idx;
    if (idx == target.objects().size()) throw EvalError("object " + oid.str() + " is not in the configuration");
    ObjectInstance& obj = target.object_at(idx);
    std::vector<std::pair<std::string, AttrValue>> values;
    for (const auto& [name, expr] : oe->updates) {
      values.emplace_back(name, coerce(evaluate(*expr, m.bindings, ctx), cls->find(name)->type));
    }
    for (auto& [name, value] : values) *obj.find(name) = std::move(value);
  }
  target.remove_messages(m.messages);
  for (std::size_t i = 0; i < emissions.size(); ++i) {
    const Emission& em = emissions[i];
    MessageInstance mi{em.emit->name, em.args, em.delays.empty() ? TimeValue(0) : em.delays[choice[i]]};
    target.add_message(std::move(mi));
  }
  return target;
}

// Odometer over the delay choice sets, last emission fastest. False once
// every combination has been produced.
bool advance(std::vector<std::size_t>& choice, const std::vector<Emission>& emissions) {
  for (std::size_t k = emissions.size(); k-- > 0;) {
    if (++choice[k] < std::max<std::size_t>(emissions[k].delays.size(), 1)) return true;
    choice[k] = 0;
  }
  return false;
}

}  // namespace

std::vector<Match> match(const Model& model, const RuleDecl& rule, const Configuration& config) {
  Matcher mt{model, rule, config, {}, {}, {}, std::vector<bool>(config.objects().size()),
             std::vector<bool>(config.messages().size())};
  mt.ctx.model = &model;
  mt.ctx.config = &config;
  Match cur;
  std::vector<Deferred> deferred;
  mt.run(0, cur, deferred);
  return std::move(mt.out);
}

std::vector<Firing> rule_firings(const Model& model, const Configuration& config, std::size_t rule_index) {
  const RuleDecl& rule = model.rules.at(rule_index);
  std::vector<Firing> out;
  bool post_guard = rule.guard && uses_post(*rule.guard);
  for (const Match& m : match(model, rule, config)) {
    try {
      EvalContext ctx;
      ctx.model = &model;
      ctx.config = &config;
      ctx.pre = &config;
      if (rule.guard && !post_guard && !evaluate_bool(*rule.guard, m.bindings, ctx)) continue;
      std::vector<Emission> emissions;
      for (const auto& eff : rule.rhs) {
        const auto* em = std::get_if<MessageEmit>(&eff.v);
        if (!em) continue;
        const MsgDecl* decl = model.find_message(em->name);
        Emission e{em, {}, {}};
        for (std::size_t i = 0; i < em->args.size(); ++i) {
          e.args.push_back(coerce(evaluate(*em->args[i], m.bindings, ctx), decl->params[i]));
        }
        for (const auto& d : em->delays) {
          TimeValue t = evaluate(*d, m.bindings, ctx).to_time();
          if (t.is_infinite()) throw EvalError("message delay must be finite");
          e.delays.push_back(std::move(t));
        }
        emissions.push_back(std::move(e));
      }
      std::vector<std::size_t> choice(emissions.size(), 0);
      while (true) {
        std::optional<Configuration> target;
        auto build = [&]() -> const Configuration& {
          if (!target) target = apply(model, rule, config, m, emissions, choice);
          return *target;
        };
        bool enabled = true;
        if (post_guard) {
          ctx.post = build;
          enabled = evaluate_bool(*rule.guard, m.bindings, ctx);
        }
        if (enabled) out.push_back(Firing{rule_index, m.bindings, choice, build()});
        if (!advance(choice, emissions)) break;
      }
    } catch (const EvalError& e) {
      throw EvalError("rule " + rule.label + " with " + describe(m.bindings) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Step> instantaneous_successors(const Model& model, const GlobalState& state) {
  std::vector<Step> out;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    for (auto& f : rule_firings(model, state.config, r)) {
      const std::string& label = model.rules[r].label;
      std::string key = label + "|" + f.target.key();
      if (!seen.insert(key).second) continue;
      out.push_back(Step{label, TimeValue(0), GlobalState{std::move(f.target), state.elapsed}, r});
    }
  }
  return out;
}

TimeValue mte(const Model& model, const Configuration& config) {
  EvalContext ctx;
  ctx.model = &model;
  ctx.config = &config;
  TimeValue result = TimeValue::infinity();
  for (const auto& o : config.objects()) {
    for (const auto& d : model.mtes) {
      const auto* op = std::get_if<ObjectPattern>(&d.pattern.v);
      if (!op) continue;
      Bindings b;
      std::vector<Deferred> deferred;
      if (!match_object(*op, o, b, ctx, deferred) || !check_deferred(deferred, b, ctx)) continue;
      result = min(result, evaluate(*d.value, b, ctx).to_time());
      break;
    }
  }
  for (const auto& m : config.messages()) {
    TimeValue t = m.delay;
    for (const auto& d : model.mtes) {
      const auto* mp = std::get_if<MessagePattern>(&d.pattern.v);
      if (!mp) continue;
      Bindings b;
      std::vector<Deferred> deferred;
      if (!match_message(*mp, m, b, ctx, deferred) || !check_deferred(deferred, b, ctx)) continue;
      t = evaluate(*d.value, b, ctx).to_time();
      break;
    }
    result = min(result, t);
  }
  return result;
}

namespace {

Configuration apply_delta(const Model& model, const Configuration& config, const TimeValue& t) {
  EvalContext ctx;
  ctx.model = &model;
  ctx.config = &config;
  Configuration out;
  for (const auto& o : config.objects()) {
    ObjectInstance next = o;
    for (const auto& d : model.deltas) {
      Bindings b;
      b.emplace(d.time_var, AttrValue(t));
      std::vector<Deferred> deferred;
      if (!match_object(d.pattern, o, b, ctx, deferred) || !check_deferred(deferred, b, ctx)) continue;
      const ClassDecl* cls = model.find_class(o.cls);
      for (const auto& [name, expr] : d.result.updates) {
        *next.find(name) = coerce(evaluate(*expr, b, ctx), cls->find(name)->type);
      }
      break;
    }
    out.add_object(std::move(next));
  }
  std::vector<MessageInstance> msgs;
  for (const auto& m : config.messages()) {
    MessageInstance next = m;
    next.delay = monus(m.delay, t);
    msgs.push_back(std::move(next));
  }
  out.replace_messages(std::move(msgs));
  return out;
}

}  // namespace

Configuration delta(const Model& model, const Configuration& config, const TimeValue& t) {
  if (t.is_infinite()) throw InternalError("delta applied with an infinite duration");
  TimeValue bound = mte(model, config);
  if (t > bound) throw InternalError("tick of " + t.str() + " exceeds mte " + bound.str());
  return apply_delta(model, config, t);
}

std::vector<Step> tick_successors(const Model& model, const GlobalState& state, const SamplingStrategy& strategy) {
  TimeValue bound = mte(model, state.config);
  std::optional<TimeValue> d;
  if (strategy.kind() == SamplingStrategy::Kind::Fixed) {
    TimeValue t = min(strategy.delta(), bound);
    if (t.is_finite() && !t.is_zero()) d = t;
  } else if (bound.is_infinite()) {
    d = strategy.default_when_inf();
  } else if (!bound.is_zero()) {
    d = bound;
  }
  if (!d) return {};
  GlobalState target{apply_delta(model, state.config, *d), state.elapsed + *d};
  return {Step{"tick", *d, std::move(target), std::nullopt}};
}

std::vector<Step> successors(const Model& model, const GlobalState& state, const SamplingStrategy& strategy) {
  auto out = instantaneous_successors(model, state);
  for (auto& s : tick_successors(model, state, strategy)) out.push_back(std::move(s));
  return out;
}

TimedPath simulate(const Model& model, const GlobalState& state, const SamplingStrategy& strategy,
                   const TimeValue& bound, const SimulateOptions& options) {
  TimedPath path;
  path.initial = state;
  std::mt19937_64 rng(options.seed);
  std::size_t zero_run = 0;
  while (true) {
    if (path.steps.size() >= options.step_budget) {
      path.end = TimedPath::End::Truncated;
      path.diagnostic = "step budget of " + std::to_string(options.step_budget) + " exhausted";
      return path;
    }
    auto succ = successors(model, path.last(), strategy);
    if (succ.empty()) {
      path.end = TimedPath::End::Deadlocked;
      return path;
    }
    std::size_t pick = 0;
    if (options.policy == ChoicePolicy::Random) pick = std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng);
    Step& step = succ[pick];
    if (step.target.elapsed > bound) {
      path.end = TimedPath::End::Truncated;
      return path;
    }
    zero_run = step.duration.is_zero() ? zero_run + 1 : 0;
    if (zero_run > options.zeno_limit) {
      path.end = TimedPath::End::Truncated;
      path.diagnostic = "more than " + std::to_string(options.zeno_limit) + " consecutive zero-duration steps";
      return path;
    }
    path.steps.push_back(std::move(step));
  }
}

}  // namespace tickcheck
