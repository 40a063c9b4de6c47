#include <cctype>
#include <functional>
#include <set>

#include "lexer.hpp"
#include "tickcheck/eval.hpp"
#include "tickcheck/model.hpp"

namespace tickcheck {

namespace detail {
Model parse_declarations(std::string_view source, std::vector<Diagnostic>& diags);
ExprPtr parse_expression(std::string_view source);
}  // namespace detail

namespace {

using Kind = Diagnostic::Kind;

bool is_numeric(const std::string& t) { return t == "Time" || t == "Int"; }

// An empty type marks an expression that already produced a diagnostic.
bool assignable(const std::string& from, const std::string& to) {
  return from.empty() || to.empty() || from == to || (from == "Int" && to == "Time");
}

std::shared_ptr<Expr> clone(const Expr& e) { return std::make_shared<Expr>(e); }

struct Scope {
  std::map<std::string, std::string> locals;
  std::set<std::string> bound;
  bool allow_pre_post = false;
  std::vector<std::pair<std::string, SourcePos>>* deferred = nullptr;
};

class Elaborator {
 public:
  Elaborator(Model& m, const ParseOptions& opts) : m_(m), opts_(opts) {}

  std::vector<Diagnostic> run() {
    m_.var_types.clear();
    m_.const_values.clear();
    m_.init_configs.clear();
    check_declarations();
    for (auto& c : m_.consts) {
      auto [e, t] = resolve(c.value, const_scope_);
      c.value = e;
      if (!assignable(t, c.type)) type_error(c.pos, "constant " + c.name + " of type " + c.type + " given a " + t);
    }
    if (diags_.empty()) evaluate_consts();
    for (auto& r : m_.rules) elaborate_rule(r);
    for (auto& d : m_.deltas) elaborate_delta(d);
    for (auto& d : m_.mtes) elaborate_mte(d);
    for (auto& p : m_.props) elaborate_prop(p);
    if (diags_.empty()) {
      for (const auto& d : validate_flatness(m_)) diags_.push_back(d);
    }
    for (auto& i : m_.inits) elaborate_init(i);
    return std::move(diags_);
  }

  std::pair<ExprPtr, std::string> resolve_predicate(const ExprPtr& e) {
    Scope s;
    return resolve(e, s);
  }

  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  void diag(Kind k, SourcePos pos, std::string msg) { diags_.push_back(Diagnostic{k, pos, std::move(msg)}); }
  void type_error(SourcePos pos, std::string msg) { diag(Kind::Type, pos, std::move(msg)); }

  bool known_type(const std::string& t) const {
    return t == "Time" || t == "Int" || t == "Bool" || t == "Oid" || m_.find_enum(t);
  }

  void check_reserved(const std::string& name, SourcePos pos, const char* what) {
    if (!opts_.allow_reserved && !name.empty() && name[0] == '#') {
      diag(Kind::Declaration, pos, std::string(what) + " '" + name + "' uses the reserved '#' prefix");
    }
  }

  void check_declarations() {
    std::set<std::string> seen;
    auto unique = [&](const std::string& ns, const std::string& name, SourcePos pos) {
      if (!seen.insert(ns + ":" + name).second) diag(Kind::Duplicate, pos, ns + " '" + name + "' declared twice");
    };
    for (const auto& e : m_.enums) {
      unique("type", e.name, e.pos);
      if (e.name == "Time" || e.name == "Int" || e.name == "Bool" || e.name == "Oid") {
        diag(Kind::Duplicate, e.pos, "enum '" + e.name + "' shadows a builtin type");
      }
      for (const auto& v : e.variants) unique("enum variant", v.name, e.pos);
    }
    for (const auto& e : m_.enums) {
      for (const auto& v : e.variants) {
        for (const auto& p : v.params) {
          if (!known_type(p)) type_error(e.pos, "unknown type '" + p + "' in variant " + v.name);
        }
      }
    }
    for (const auto& c : m_.classes) {
      unique("class", c.name, c.pos);
      check_reserved(c.name, c.pos, "class");
      std::set<std::string> attrs;
      for (const auto& a : c.attrs) {
        if (!attrs.insert(a.name).second) diag(Kind::Duplicate, c.pos, "attribute '" + a.name + "' declared twice in " + c.name);
        if (!known_type(a.type)) type_error(c.pos, "unknown type '" + a.type + "' for attribute " + c.name + "." + a.name);
      }
    }
    for (const auto& msg : m_.messages) {
      unique("message", msg.name, msg.pos);
      for (const auto& p : msg.params) {
        if (!known_type(p)) type_error(msg.pos, "unknown type '" + p + "' in message " + msg.name);
      }
    }
    for (const auto& v : m_.vars) {
      if (!known_type(v.type)) type_error(v.pos, "unknown type '" + v.type + "'");
      for (const auto& n : v.names) {
        unique("variable", n, v.pos);
        m_.var_types[n] = v.type;
      }
    }
    for (const auto& c : m_.consts) {
      unique("constant", c.name, c.pos);
      if (!known_type(c.type)) type_error(c.pos, "unknown type '" + c.type + "'");
    }
    for (const auto& p : m_.props) {
      unique("proposition", p.name, p.pos);
      for (const auto& param : p.params) {
        if (!m_.var_types.count(param)) {
          diag(Kind::UnboundVariable, p.pos, "parameter '" + param + "' of " + p.name + " is not a declared variable");
        }
      }
    }
    for (const auto& i : m_.inits) unique("initial state", i.name, i.pos);
    for (const auto& [name, value] : opts_.params) {
      bool found = false;
      for (const auto& c : m_.consts) found = found || c.name == name;
      if (!found) diag(Kind::Declaration, {}, "parameter '" + name + "' does not name a constant");
    }
  }

  // Name lookup order: variable, enum variant, constant, object identifier.
  std::pair<ExprPtr, std::string> resolve_name(const Expr& e, Scope& s) {
    const std::string& name = e.name;
    auto var_type = [&]() -> std::optional<std::string> {
      if (auto it = s.locals.find(name); it != s.locals.end()) return it->second;
      if (auto it = m_.var_types.find(name); it != m_.var_types.end()) return it->second;
      return std::nullopt;
    };
    if (auto t = var_type()) {
      if (!s.bound.count(name)) {
        if (s.deferred) {
          s.deferred->emplace_back(name, e.pos);
        } else {
          diag(Kind::UnboundVariable, e.pos, "variable " + name + " is not bound here");
        }
      }
      auto r = clone(e);
      r->kind = ExprKind::Var;
      return {r, *t};
    }
    if (e.kind == ExprKind::Var) {
      diag(Kind::UnboundVariable, e.pos, "undeclared variable " + name);
      return {clone(e), ""};
    }
    if (auto v = m_.find_variant(name)) {
      if (!v->second->params.empty()) {
        type_error(e.pos, "constructor " + name + " needs " + std::to_string(v->second->params.size()) + " argument(s)");
        return {clone(e), ""};
      }
      auto r = clone(e);
      r->kind = ExprKind::EnumConst;
      return {r, v->first->name};
    }
    for (const auto& c : m_.consts) {
      if (c.name == name) {
        auto r = clone(e);
        r->kind = ExprKind::Const;
        return {r, c.type};
      }
    }
    if (!name.empty() && std::isupper(static_cast<unsigned char>(name[0]))) {
      diag(Kind::UnboundVariable, e.pos, "undeclared variable " + name);
      return {clone(e), ""};
    }
    check_reserved(name, e.pos, "object identifier");
    auto r = clone(e);
    r->kind = ExprKind::OidConst;
    return {r, "Oid"};
  }

  std::pair<ExprPtr, std::string> resolve(const ExprPtr& ep, Scope& s) {
    const Expr& e = *ep;
    switch (e.kind) {
      case ExprKind::Literal: {
        switch (e.literal.kind()) {
          case AttrValue::Kind::Time:
            return {ep, "Time"};
          case AttrValue::Kind::Int:
            return {ep, "Int"};
          case AttrValue::Kind::Bool:
            return {ep, "Bool"};
          case AttrValue::Kind::Oid:
            return {ep, "Oid"};
          case AttrValue::Kind::Enum:
            return {ep, e.literal.as_enum().type};
          case AttrValue::Kind::Record:
            return {ep, e.literal.as_record().type};
        }
        return {ep, ""};
      }
      case ExprKind::Ident:
      case ExprKind::Var:
      case ExprKind::EnumConst:
      case ExprKind::Const:
      case ExprKind::OidConst:
        return resolve_name(e, s);
      case ExprKind::Ctor: {
        auto v = m_.find_variant(e.name);
        auto r = clone(e);
        r->args.clear();
        std::vector<std::string> types;
        for (const auto& a : e.args) {
          auto [ra, t] = resolve(a, s);
          r->args.push_back(ra);
          types.push_back(t);
        }
        if (!v) {
          type_error(e.pos, "unknown constructor " + e.name);
          return {r, ""};
        }
        check_ctor_args(e, *v->second, types);
        return {r, v->first->name};
      }
      case ExprKind::Unary: {
        auto [a, t] = resolve(e.args[0], s);
        auto r = clone(e);
        r->args = {a};
        if (e.op == Op::Not) {
          if (!assignable(t, "Bool")) type_error(e.pos, "'not' applied to " + t);
          return {r, "Bool"};
        }
        if (!t.empty() && t != "Int") type_error(e.pos, "unary minus needs an Int, got " + t);
        return {r, "Int"};
      }
      case ExprKind::Binary: {
        auto [a, ta] = resolve(e.args[0], s);
        auto [b, tb] = resolve(e.args[1], s);
        auto r = clone(e);
        r->args = {a, b};
        switch (e.op) {
          case Op::And:
          case Op::Or:
            if (!assignable(ta, "Bool") || !assignable(tb, "Bool")) type_error(e.pos, "boolean connective on non-booleans");
            return {r, "Bool"};
          case Op::Lt:
          case Op::Le:
          case Op::Gt:
          case Op::Ge:
            if ((!ta.empty() && !is_numeric(ta)) || (!tb.empty() && !is_numeric(tb))) {
              type_error(e.pos, "ordering comparison between " + ta + " and " + tb);
            }
            return {r, "Bool"};
          case Op::Eq:
          case Op::Ne:
            if (!ta.empty() && !tb.empty() && ta != tb && !(is_numeric(ta) && is_numeric(tb))) {
              type_error(e.pos, "equality between " + ta + " and " + tb);
            }
            return {r, "Bool"};
          default: {
            if ((!ta.empty() && !is_numeric(ta)) || (!tb.empty() && !is_numeric(tb))) {
              type_error(e.pos, "arithmetic on " + ta + " and " + tb);
              return {r, ""};
            }
            if (e.op == Op::Div || ta == "Time" || tb == "Time") return {r, "Time"};
            return {r, ta.empty() || tb.empty() ? "" : "Int"};
          }
        }
      }
      case ExprKind::Call: {
        auto r = clone(e);
        r->args.clear();
        std::string result = "Int";
        for (const auto& a : e.args) {
          auto [ra, t] = resolve(a, s);
          r->args.push_back(ra);
          if (!t.empty() && !is_numeric(t)) type_error(e.pos, e.name + " applied to " + t);
          if (t == "Time") result = "Time";
        }
        if (e.args.size() != 2) type_error(e.pos, e.name + " takes two arguments");
        return {r, result};
      }
      case ExprKind::If: {
        auto [c, tc] = resolve(e.args[0], s);
        auto [a, ta] = resolve(e.args[1], s);
        auto [b, tb] = resolve(e.args[2], s);
        auto r = clone(e);
        r->args = {c, a, b};
        if (!assignable(tc, "Bool")) type_error(e.pos, "condition of 'if' is not boolean");
        if (ta.empty() || tb.empty()) return {r, ta.empty() ? tb : ta};
        if (ta == tb) return {r, ta};
        if (is_numeric(ta) && is_numeric(tb)) return {r, "Time"};
        type_error(e.pos, "branches of 'if' have types " + ta + " and " + tb);
        return {r, ""};
      }
      case ExprKind::Exists: {
        Scope inner = s;
        std::vector<std::pair<std::string, SourcePos>> deferred;
        inner.deferred = &deferred;
        auto r = clone(e);
        r->pattern = std::make_shared<ElemPattern>(resolve_elem_pattern(*e.pattern, inner, false));
        check_deferred_vars(deferred, inner);
        inner.deferred = s.deferred;
        r->args.clear();
        if (!e.args.empty()) {
          auto [c, tc] = resolve(e.args[0], inner);
          if (!assignable(tc, "Bool")) type_error(e.pos, "condition of 'exists' is not boolean");
          r->args.push_back(c);
        }
        return {r, "Bool"};
      }
      case ExprKind::PropAtom: {
        auto r = clone(e);
        r->args.clear();
        std::vector<std::string> types;
        for (const auto& a : e.args) {
          auto [ra, t] = resolve(a, s);
          r->args.push_back(ra);
          types.push_back(t);
        }
        if (e.scope != PropScope::Sat && !s.allow_pre_post) {
          type_error(e.pos, "pre/post propositions are only allowed in rule guards");
        }
        const PropDecl* p = m_.find_prop(e.name);
        if (!p) {
          diag(Kind::Declaration, e.pos, "unknown proposition " + e.name);
        } else if (p->params.size() != types.size()) {
          type_error(e.pos, "proposition " + e.name + " takes " + std::to_string(p->params.size()) + " argument(s)");
        } else {
          for (std::size_t i = 0; i < types.size(); ++i) {
            auto it = m_.var_types.find(p->params[i]);
            if (it != m_.var_types.end() && !assignable(types[i], it->second)) {
              type_error(e.pos, "argument " + std::to_string(i + 1) + " of " + e.name + " should be " + it->second);
            }
          }
        }
        return {r, "Bool"};
      }
    }
    return {ep, ""};
  }

  void check_ctor_args(const Expr& e, const EnumVariant& v, const std::vector<std::string>& types) {
    if (v.params.size() != types.size()) {
      type_error(e.pos, "constructor " + e.name + " takes " + std::to_string(v.params.size()) + " argument(s)");
      return;
    }
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (!assignable(types[i], v.params[i])) {
        type_error(e.pos, "argument " + std::to_string(i + 1) + " of " + e.name + " should be " + v.params[i]);
      }
    }
  }

  void check_deferred_vars(const std::vector<std::pair<std::string, SourcePos>>& deferred, const Scope& s) {
    for (const auto& [name, pos] : deferred) {
      if (!s.bound.count(name)) diag(Kind::UnboundVariable, pos, "variable " + name + " is not bound by the pattern");
    }
  }

  // Bare variables and constructor arguments bind; anything else is compared.
  ExprPtr resolve_pattern_term(const ExprPtr& ep, Scope& s, const std::string& expected) {
    const Expr& e = *ep;
    bool is_var = (e.kind == ExprKind::Ident || e.kind == ExprKind::Var) &&
                  (s.locals.count(e.name) || m_.var_types.count(e.name));
    if (is_var) {
      s.bound.insert(e.name);
      auto [r, t] = resolve_name(e, s);
      if (!t.empty() && !expected.empty() && t != expected) {
        type_error(e.pos, "variable " + e.name + " of type " + t + " used where " + expected + " is expected");
      }
      return r;
    }
    if (e.kind == ExprKind::Ctor) {
      auto v = m_.find_variant(e.name);
      auto r = clone(e);
      if (!v) {
        type_error(e.pos, "unknown constructor " + e.name);
        return r;
      }
      if (v->second->params.size() != e.args.size()) {
        type_error(e.pos, "constructor " + e.name + " takes " + std::to_string(v->second->params.size()) + " argument(s)");
        return r;
      }
      r->args.clear();
      for (std::size_t i = 0; i < e.args.size(); ++i) r->args.push_back(resolve_pattern_term(e.args[i], s, v->second->params[i]));
      if (!expected.empty() && v->first->name != expected) {
        type_error(e.pos, "constructor " + e.name + " used where " + expected + " is expected");
      }
      return r;
    }
    auto [r, t] = resolve(ep, s);
    if (!assignable(t, expected)) type_error(e.pos, "expected " + expected + " but found " + t);
    return r;
  }

  ObjectPattern resolve_object_pattern(const ObjectPattern& p, Scope& s) {
    ObjectPattern r = p;
    r.oid = resolve_pattern_term(p.oid, s, "Oid");
    const ClassDecl* cls = m_.find_class(p.cls);
    if (!cls) {
      type_error(p.pos, "unknown class " + p.cls);
      return r;
    }
    std::set<std::string> seen;
    r.attrs.clear();
    for (const auto& [name, term] : p.attrs) {
      if (!seen.insert(name).second) diag(Kind::Duplicate, p.pos, "attribute " + name + " repeated in pattern");
      const AttrDecl* a = cls->find(name);
      if (!a) {
        type_error(p.pos, "class " + p.cls + " has no attribute " + name);
        r.attrs.emplace_back(name, term);
        continue;
      }
      r.attrs.emplace_back(name, resolve_pattern_term(term, s, a->type));
    }
    return r;
  }

  MessagePattern resolve_message_pattern(const MessagePattern& p, Scope& s, bool allow_delay) {
    MessagePattern r = p;
    const MsgDecl* msg = m_.find_message(p.name);
    if (!msg) {
      diag(Kind::Declaration, p.pos, "unknown message " + p.name);
      return r;
    }
    if (msg->params.size() != p.args.size()) {
      type_error(p.pos, "message " + p.name + " takes " + std::to_string(msg->params.size()) + " argument(s)");
      return r;
    }
    r.args.clear();
    for (std::size_t i = 0; i < p.args.size(); ++i) r.args.push_back(resolve_pattern_term(p.args[i], s, msg->params[i]));
    if (p.delay) {
      if (!allow_delay) type_error(p.pos, "message delay patterns are only allowed in mte equations");
      r.delay = resolve_pattern_term(p.delay, s, "Time");
    }
    return r;
  }

  ElemPattern resolve_elem_pattern(const ElemPattern& p, Scope& s, bool allow_delay) {
    if (const auto* op = std::get_if<ObjectPattern>(&p.v)) return ElemPattern{resolve_object_pattern(*op, s)};
    return ElemPattern{resolve_message_pattern(std::get<MessagePattern>(p.v), s, allow_delay)};
  }

  ObjectEffect resolve_object_effect(const ObjectEffect& eff, Scope& s) {
    ObjectEffect r = eff;
    auto [oid, t] = resolve(eff.oid, s);
    r.oid = oid;
    if (!assignable(t, "Oid")) type_error(eff.pos, "object identifier has type " + t);
    const ClassDecl* cls = m_.find_class(eff.cls);
    if (!cls) {
      type_error(eff.pos, "unknown class " + eff.cls);
      return r;
    }
    std::set<std::string> seen;
    r.updates.clear();
    for (const auto& [name, expr] : eff.updates) {
      if (!seen.insert(name).second) diag(Kind::Duplicate, eff.pos, "attribute " + name + " assigned twice");
      auto [re, te] = resolve(expr, s);
      r.updates.emplace_back(name, re);
      const AttrDecl* a = cls->find(name);
      if (!a) {
        type_error(eff.pos, "class " + eff.cls + " has no attribute " + name);
      } else if (!assignable(te, a->type)) {
        type_error(eff.pos, "attribute " + eff.cls + "." + name + " of type " + a->type + " assigned a " + te);
      }
    }
    return r;
  }

  MessageEmit resolve_message_emit(const MessageEmit& em, Scope& s) {
    MessageEmit r = em;
    r.args.clear();
    std::vector<std::string> types;
    for (const auto& a : em.args) {
      auto [ra, t] = resolve(a, s);
      r.args.push_back(ra);
      types.push_back(t);
    }
    r.delays.clear();
    for (const auto& d : em.delays) {
      auto [rd, t] = resolve(d, s);
      r.delays.push_back(rd);
      if (!assignable(t, "Time")) type_error(em.pos, "message delay of type " + t);
    }
    const MsgDecl* msg = m_.find_message(em.name);
    if (!msg) {
      diag(Kind::Declaration, em.pos, "unknown message " + em.name);
    } else if (msg->params.size() != types.size()) {
      type_error(em.pos, "message " + em.name + " takes " + std::to_string(msg->params.size()) + " argument(s)");
    } else {
      for (std::size_t i = 0; i < types.size(); ++i) {
        if (!assignable(types[i], msg->params[i])) {
          type_error(em.pos, "argument " + std::to_string(i + 1) + " of " + em.name + " should be " + msg->params[i]);
        }
      }
    }
    return r;
  }

  void elaborate_rule(RuleDecl& rule) {
    Scope s;
    std::vector<std::pair<std::string, SourcePos>> deferred;
    s.deferred = &deferred;
    for (auto& p : rule.lhs) p = resolve_elem_pattern(p, s, false);
    check_deferred_vars(deferred, s);
    s.deferred = nullptr;
    if (rule.guard) {
      s.allow_pre_post = true;
      auto [g, t] = resolve(rule.guard, s);
      rule.guard = g;
      if (!assignable(t, "Bool")) type_error(rule.pos, "guard of rule " + rule.label + " is not boolean");
      s.allow_pre_post = false;
    }
    for (auto& eff : rule.rhs) {
      if (auto* oe = std::get_if<ObjectEffect>(&eff.v)) {
        *oe = resolve_object_effect(*oe, s);
      } else {
        eff.v = resolve_message_emit(std::get<MessageEmit>(eff.v), s);
      }
    }
  }

  void elaborate_delta(DeltaDecl& d) {
    Scope s;
    std::vector<std::pair<std::string, SourcePos>> deferred;
    s.deferred = &deferred;
    auto it = m_.var_types.find(d.time_var);
    if (it != m_.var_types.end() && it->second != "Time") type_error(d.pos, "time variable " + d.time_var + " must have type Time");
    s.locals[d.time_var] = "Time";
    s.bound.insert(d.time_var);
    d.pattern = resolve_object_pattern(d.pattern, s);
    check_deferred_vars(deferred, s);
    s.deferred = nullptr;
    d.result = resolve_object_effect(d.result, s);
  }

  void elaborate_mte(MteDecl& d) {
    Scope s;
    std::vector<std::pair<std::string, SourcePos>> deferred;
    s.deferred = &deferred;
    d.pattern = resolve_elem_pattern(d.pattern, s, true);
    check_deferred_vars(deferred, s);
    s.deferred = nullptr;
    auto [v, t] = resolve(d.value, s);
    d.value = v;
    if (!assignable(t, "Time")) type_error(d.pos, "mte equation yields " + t + ", not Time");
  }

  void elaborate_prop(PropDecl& p) {
    Scope s;
    for (const auto& param : p.params) s.bound.insert(param);
    auto [pred, t] = resolve(p.predicate, s);
    p.predicate = pred;
    if (!assignable(t, "Bool")) type_error(p.pos, "proposition " + p.name + " is not boolean");
  }

  void collect_consts(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == ExprKind::Const) out.push_back(e.name);
    for (const auto& a : e.args) collect_consts(*a, out);
  }

  void evaluate_consts() {
    std::map<std::string, int> state;
    std::function<void(ConstDecl&)> eval = [&](ConstDecl& c) {
      int& st = state[c.name];
      if (st == 2) return;
      if (st == 1) {
        diag(Kind::Declaration, c.pos, "constant " + c.name + " depends on itself");
        return;
      }
      st = 1;
      if (auto it = opts_.params.find(c.name); it != opts_.params.end()) {
        try {
          m_.const_values[c.name] = parse_param(c, it->second);
        } catch (const std::exception& ex) {
          diag(Kind::Type, c.pos, "bad value '" + it->second + "' for parameter " + c.name + ": " + ex.what());
        }
        state[c.name] = 2;
        return;
      }
      std::vector<std::string> deps;
      collect_consts(*c.value, deps);
      for (const auto& dname : deps) {
        for (auto& other : m_.consts) {
          if (other.name == dname) eval(other);
        }
      }
      try {
        EvalContext ctx;
        ctx.model = &m_;
        m_.const_values[c.name] = coerce(evaluate(*c.value, {}, ctx), c.type);
      } catch (const std::exception& ex) {
        diag(Kind::Type, c.pos, "cannot evaluate constant " + c.name + ": " + ex.what());
      }
      state[c.name] = 2;
    };
    for (auto& c : m_.consts) eval(c);
  }

  AttrValue parse_param(const ConstDecl& c, const std::string& text) {
    if (c.type == "Time") return AttrValue(TimeValue::parse(text));
    if (c.type == "Int") return AttrValue(mpz_class(text, 10));
    if (c.type == "Bool") {
      if (text == "true") return AttrValue(true);
      if (text == "false") return AttrValue(false);
      throw std::invalid_argument("expected true or false");
    }
    if (const EnumDecl* e = m_.find_enum(c.type)) {
      for (const auto& v : e->variants) {
        if (v.name == text && v.params.empty()) return AttrValue(EnumValue{e->name, v.name});
      }
      throw std::invalid_argument("not a variant of " + c.type);
    }
    throw std::invalid_argument("parameters of type " + c.type + " cannot be set from the command line");
  }

  void elaborate_init(InitDecl& init) {
    Scope s;
    Configuration config;
    bool ok = diags_.empty();
    for (auto& el : init.elements) {
      if (auto* oe = std::get_if<ObjectEffect>(&el.v)) {
        *oe = resolve_object_effect(*oe, s);
        if (oe->oid->kind != ExprKind::OidConst) {
          type_error(oe->pos, "initial objects need a constant identifier");
          ok = false;
          continue;
        }
        const ClassDecl* cls = m_.find_class(oe->cls);
        if (!cls) {
          ok = false;
          continue;
        }
        for (const auto& a : cls->attrs) {
          bool given = false;
          for (const auto& u : oe->updates) given = given || u.first == a.name;
          if (!given) {
            type_error(oe->pos, "object " + oe->oid->name + " is missing attribute " + a.name);
            ok = false;
          }
        }
      } else {
        auto& em = std::get<MessageEmit>(el.v);
        if (em.choice || em.delays.size() > 1) {
          type_error(em.pos, "initial messages need a single delay");
          ok = false;
        }
        em = resolve_message_emit(em, s);
      }
    }
    if (!ok || !diags_.empty()) return;
    EvalContext ctx;
    ctx.model = &m_;
    for (const auto& el : init.elements) {
      try {
        if (const auto* oe = std::get_if<ObjectEffect>(&el.v)) {
          const ClassDecl* cls = m_.find_class(oe->cls);
          ObjectInstance obj{oe->oid->name, oe->cls, {}};
          for (const auto& a : cls->attrs) {
            for (const auto& [name, expr] : oe->updates) {
              if (name == a.name) obj.attrs.emplace_back(name, coerce(evaluate(*expr, {}, ctx), a.type));
            }
          }
          if (config.find_object(obj.oid)) {
            diag(Kind::Duplicate, oe->pos, "duplicate object identifier '" + obj.oid + "' in initial state " + init.name);
            continue;
          }
          config.add_object(std::move(obj));
        } else {
          const auto& em = std::get<MessageEmit>(el.v);
          const MsgDecl* msg = m_.find_message(em.name);
          MessageInstance mi{em.name, {}, TimeValue(0)};
          for (std::size_t i = 0; i < em.args.size(); ++i) mi.args.push_back(coerce(evaluate(*em.args[i], {}, ctx), msg->params[i]));
          if (!em.delays.empty()) mi.delay = evaluate(*em.delays[0], {}, ctx).to_time();
          if (mi.delay.is_infinite()) throw EvalError("message delay must be finite");
          config.add_message(std::move(mi));
        }
      } catch (const Error& ex) {
        type_error(init.pos, std::string("in initial state ") + init.name + ": " + ex.what());
      }
    }
    m_.init_configs[init.name] = std::move(config);
  }

  Model& m_;
  const ParseOptions& opts_;
  std::vector<Diagnostic> diags_;
  Scope const_scope_;
};

std::string oid_key(const Expr& e) {
  if (e.kind == ExprKind::Var || e.kind == ExprKind::OidConst || e.kind == ExprKind::Ident) return e.name;
  return "";
}

}  // namespace

std::vector<Diagnostic> validate_flatness(const Model& model) {
  std::vector<Diagnostic> out;
  for (const auto& r : model.rules) {
    std::map<std::string, std::string> lhs;
    for (const auto& p : r.lhs) {
      if (const auto* op = std::get_if<ObjectPattern>(&p.v)) {
        std::string k = oid_key(*op->oid);
        if (k.empty()) {
          out.push_back({Kind::Flatness, op->pos, "rule " + r.label + ": object identifier must be a variable or constant"});
        } else if (!lhs.emplace(k, op->cls).second) {
          out.push_back({Kind::Flatness, op->pos, "rule " + r.label + ": object " + k + " matched twice"});
        }
      }
    }
    std::set<std::string> rhs;
    for (const auto& e : r.rhs) {
      const auto* oe = std::get_if<ObjectEffect>(&e.v);
      if (!oe) continue;
      std::string k = oid_key(*oe->oid);
      auto it = lhs.find(k);
      if (k.empty() || it == lhs.end()) {
        out.push_back({Kind::Flatness, oe->pos, "rule " + r.label + " creates an object"});
      } else if (it->second != oe->cls) {
        out.push_back({Kind::Flatness, oe->pos, "rule " + r.label + " changes the class of " + k});
      } else if (!rhs.insert(k).second) {
        out.push_back({Kind::Flatness, oe->pos, "rule " + r.label + " rewrites " + k + " twice"});
      }
    }
    for (const auto& [k, cls] : lhs) {
      if (!rhs.count(k)) out.push_back({Kind::Flatness, r.pos, "rule " + r.label + " deletes object " + k});
    }
  }
  for (const auto& d : model.deltas) {
    if (oid_key(*d.pattern.oid) != oid_key(*d.result.oid) || d.pattern.cls != d.result.cls) {
      out.push_back({Kind::Flatness, d.pos, "delta equation must keep the object identifier and class"});
    }
  }
  return out;
}

void elaborate(Model& model, const ParseOptions& options) {
  auto diags = Elaborator(model, options).run();
  if (!diags.empty()) throw ModelError(std::move(diags));
}

std::vector<Diagnostic> check_model(std::string_view source, const ParseOptions& options) {
  std::vector<Diagnostic> diags;
  Model m = detail::parse_declarations(source, diags);
  if (!diags.empty()) return diags;
  return Elaborator(m, options).run();
}

Model parse_model(std::string_view source, const ParseOptions& options) {
  std::vector<Diagnostic> diags;
  Model m = detail::parse_declarations(source, diags);
  if (!diags.empty()) throw ModelError(std::move(diags));
  elaborate(m, options);
  return m;
}

ExprPtr parse_predicate(const Model& model, std::string_view text) {
  ExprPtr e = detail::parse_expression(text);
  Model& m = const_cast<Model&>(model);  // resolution reads only; run() is not called
  ParseOptions opts;
  opts.allow_reserved = true;
  Elaborator el(m, opts);
  auto [r, t] = el.resolve_predicate(e);
  auto& diags = el.diagnostics();
  if (!assignable(t, "Bool")) diags.push_back({Kind::Type, {}, "search condition is not boolean"});
  if (!diags.empty()) throw ModelError(diags);
  return r;
}

}  // namespace tickcheck
