#include "tickcheck/transform.hpp"

#include <map>
#include <stdexcept>

#include "tickcheck/expr_build.hpp"

namespace tickcheck {

namespace {

using namespace build;

[[noreturn]] void reject(const std::string& msg) {
  throw ModelError({Diagnostic{Diagnostic::Kind::Declaration, {}, msg}});
}

void check_prop(const Model& model, const Proposition& p) {
  const PropDecl* d = model.find_prop(p.name);
  if (!d) reject("unknown proposition " + p.name);
  if (d->params.size() != p.args.size()) reject("proposition " + p.name + " expects " + std::to_string(d->params.size()) + " argument(s)");
}

ExprPtr time_literal(const TimeValue& t) {
  if (t.is_finite() && t.is_integer()) return literal(AttrValue(mpz_class(t.value().get_num())));
  return literal(AttrValue(t));
}

ExprPtr value_literal(const AttrValue& v) {
  if (v.kind() == AttrValue::Kind::Time) return time_literal(v.as_time_exact());
  return literal(v);
}

ElemEffect object_effect(const std::string& oid, const std::string& cls,
                         std::vector<std::pair<std::string, ExprPtr>> updates) {
  ObjectEffect e;
  e.oid = build::oid(oid);
  e.cls = cls;
  e.updates = std::move(updates);
  return ElemEffect{std::move(e)};
}

ExprPtr status(const char* s) { return ident(s); }

ExprPtr post(const Proposition& p) { return prop_atom(PropScope::Post, p); }
ExprPtr pre(const Proposition& p) { return prop_atom(PropScope::Pre, p); }
ExprPtr both(ExprPtr a, ExprPtr b) { return binary(Op::And, std::move(a), std::move(b)); }
ExprPtr either(ExprPtr a, ExprPtr b) { return binary(Op::Or, std::move(a), std::move(b)); }

struct Variant {
  const char* from;
  std::vector<std::pair<std::string, ExprPtr>> clock_updates;
  ExprPtr condition;
};

TransformResult instrument(const Model& model, const Configuration& init, TransformResult::Kind kind,
                           const Proposition& p, const Proposition& q, const TimeValue& r) {
  if (r.is_infinite() || r.is_zero()) throw std::invalid_argument("bound r must be finite and positive");
  check_prop(model, p);
  if (kind == TransformResult::Kind::BoundedResponse) check_prop(model, q);
  if (auto flat = validate_flatness(model); !flat.empty()) throw ModelError(flat);
  if (model.find_class(kClockClass)) reject("the model already declares a class named Clock");
  if (model.find_enum("OnOff") || model.find_variant("on") || model.find_variant("off")) {
    reject("the model already declares OnOff, on or off");
  }

  TransformResult out;
  out.kind = kind;
  out.original = std::make_shared<const Model>(model);
  out.p = p;
  out.q = q;
  out.r = r;
  out.clock_oid = kind == TransformResult::Kind::BoundedResponse ? kBrClock : kMsClock;

  Model m = model;
  // Freeze constants so command-line overrides survive re-elaboration.
  for (auto& c : m.consts) c.value = value_literal(model.const_values.at(c.name));
  m.enums.push_back(EnumDecl{"OnOff", {{"on", {}}, {"off", {}}}, {}});
  m.classes.push_back(ClassDecl{kClockClass, {{"clock", "Time"}, {"status", "OnOff"}}, {}});
  m.vars.push_back(VarDecl{{"#CLK"}, "Time", {}});

  const std::string& c = out.clock_oid;
  ObjectPattern on_pattern;
  on_pattern.oid = build::oid(c);
  on_pattern.cls = kClockClass;
  on_pattern.attrs = {{"clock", var("#CLK")}, {"status", status("on")}};
  ObjectEffect advanced;
  advanced.oid = build::oid(c);
  advanced.cls = kClockClass;
  advanced.updates = {{"clock", if_then_else(binary(Op::Le, var("#CLK"), time_literal(r)),
                                             binary(Op::Add, var("#CLK"), var("#T")), var("#CLK"))}};
  m.deltas.push_back(DeltaDecl{on_pattern, "#T", advanced, {}});
  ObjectPattern any_clock;
  any_clock.oid = build::oid(c);
  any_clock.cls = kClockClass;
  m.mtes.push_back(MteDecl{ElemPattern{any_clock}, literal(AttrValue(TimeValue::infinity())), {}});

  auto reset = [&] { return std::vector<std::pair<std::string, ExprPtr>>{{"clock", literal(AttrValue::integer(0))}, {"status", status("on")}}; };
  auto turn_off = [&] { return std::vector<std::pair<std::string, ExprPtr>>{{"status", status("off")}}; };
  std::vector<Variant> variants;
  if (kind == TransformResult::Kind::BoundedResponse) {
    variants = {
        {"on", {}, negate(post(q))},
        {"on", turn_off(), post(q)},
        {"off", reset(), both(post(p), negate(post(q)))},
        {"off", {}, either(post(q), negate(post(p)))},
    };
  } else {
    variants = {
        {"on", {}, negate(post(p))},
        {"on", turn_off(), post(p)},
        {"off", {}, either(negate(pre(p)), post(p))},
        {"off", reset(), both(pre(p), negate(post(p)))},
    };
  }

  m.rules.clear();
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const RuleDecl& orig = model.rules[i];
    for (const auto& v : variants) {
      RuleDecl r2 = orig;
      ObjectPattern clock;
      clock.oid = build::oid(c);
      clock.cls = kClockClass;
      clock.attrs = {{"status", status(v.from)}};
      r2.lhs.push_back(ElemPattern{clock});
      r2.rhs.push_back(object_effect(c, kClockClass, v.clock_updates));
      r2.guard = conj(orig.guard, v.condition);
      r2.origin = i;
      m.rules.push_back(std::move(r2));
    }
  }

  InitDecl idecl;
  idecl.name = "default";
  for (const auto& o : init.objects()) {
    std::vector<std::pair<std::string, ExprPtr>> updates;
    for (const auto& [name, value] : o.attrs) updates.emplace_back(name, value_literal(value));
    idecl.elements.push_back(object_effect(o.oid, o.cls, std::move(updates)));
  }
  for (const auto& msg : init.messages()) {
    MessageEmit e;
    e.name = msg.name;
    for (const auto& a : msg.args) e.args.push_back(value_literal(a));
    e.delays.push_back(time_literal(msg.delay));
    idecl.elements.push_back(ElemEffect{std::move(e)});
  }
  bool on = kind == TransformResult::Kind::BoundedResponse && holds(model, init, p) && !holds(model, init, q);
  TimeValue start = kind == TransformResult::Kind::BoundedResponse ? TimeValue(0) : r;
  idecl.elements.push_back(object_effect(c, kClockClass,
                                         {{"clock", time_literal(start)}, {"status", status(on ? "on" : "off")}}));
  m.inits = {std::move(idecl)};

  ParseOptions opts;
  opts.allow_reserved = true;
  elaborate(m, opts);
  out.init = m.init();
  out.model = std::move(m);
  return out;
}

bool is_clock(const ObjectInstance& o) { return o.cls == kClockClass && !o.oid.empty() && o.oid[0] == '#'; }

std::string firing_key(const Bindings& b, const std::vector<std::size_t>& choice) {
  std::string out;
  for (const auto& [name, value] : b) {
    out += name + "=";
    value.encode(out);
    out += ";";
  }
  for (auto c : choice) out += std::to_string(c) + ",";
  return out;
}

}  // namespace

TransformResult br_transform(const Model& model, const Configuration& init, const Proposition& p,
                             const Proposition& q, const TimeValue& r) {
  return instrument(model, init, TransformResult::Kind::BoundedResponse, p, q, r);
}

TransformResult ms_transform(const Model& model, const Configuration& init, const Proposition& p, const TimeValue& r) {
  return instrument(model, init, TransformResult::Kind::MinSeparation, p, p, r);
}

ClockReading read_clock(const Configuration& config) {
  const ObjectInstance* found = nullptr;
  for (const auto& o : config.objects()) {
    if (!is_clock(o)) continue;
    if (found) throw IntegrityError("more than one observer clock in the configuration");
    found = &o;
  }
  if (!found) throw IntegrityError("no observer clock in the configuration");
  return ClockReading{found->at("clock").to_time(), found->at("status").as_enum().variant == "on"};
}

Configuration project(const Configuration& config) {
  read_clock(config);
  Configuration out;
  for (const auto& o : config.objects()) {
    if (!is_clock(o)) out.add_object(o);
  }
  out.replace_messages(config.messages());
  return out;
}

GlobalState project(const GlobalState& state) { return GlobalState{project(state.config), state.elapsed}; }

bool clock_violation(const TransformResult& t, const Configuration& config) {
  ClockReading c = read_clock(config);
  if (t.kind == TransformResult::Kind::BoundedResponse) return c.value > t.r;
  return !c.on && c.value < t.r;
}

std::optional<std::string> check_exclusivity(const TransformResult& t, const Configuration& config) {
  Configuration plain = project(config);
  std::map<std::size_t, std::map<std::string, int>> fired;
  for (std::size_t i = 0; i < t.model.rules.size(); ++i) {
    const auto& origin = t.model.rules[i].origin;
    if (!origin) continue;
    for (const auto& f : rule_firings(t.model, config, i)) ++fired[*origin][firing_key(f.bindings, f.choice)];
  }
  for (std::size_t i = 0; i < t.original->rules.size(); ++i) {
    std::map<std::string, int> expected;
    for (const auto& f : rule_firings(*t.original, plain, i)) expected[firing_key(f.bindings, f.choice)] = 1;
    const auto& got = fired[i];
    for (const auto& [key, n] : expected) {
      auto it = got.find(key);
      int count = it == got.end() ? 0 : it->second;
      if (count != 1) {
        return "rule " + t.original->rules[i].label + " match {" + key + "} fired " + std::to_string(count) +
               " instrumented variants";
      }
    }
    for (const auto& [key, n] : got) {
      if (!expected.count(key)) return "rule " + t.original->rules[i].label + " variant fired without an original match";
    }
  }
  return std::nullopt;
}

}  // namespace tickcheck
