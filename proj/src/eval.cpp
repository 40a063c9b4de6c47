#include "tickcheck/eval.hpp"

#include <stdexcept>

namespace tickcheck {

namespace {

class UnboundVar : public EvalError {
 public:
  using EvalError::EvalError;
};

int compare_num(const AttrValue& a, const AttrValue& b) {
  if (a.kind() == AttrValue::Kind::Int && b.kind() == AttrValue::Kind::Int) return cmp(a.as_int(), b.as_int());
  if (a.kind() == AttrValue::Kind::Int && sgn(a.as_int()) < 0) return -1;
  if (b.kind() == AttrValue::Kind::Int && sgn(b.as_int()) < 0) return 1;
  auto c = a.to_time() <=> b.to_time();
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

void require_numeric(const AttrValue& v, const char* what) {
  if (!v.is_numeric()) throw EvalError(std::string(what) + " applied to '" + v.str() + "'");
}

AttrValue arithmetic(Op op, const AttrValue& a, const AttrValue& b) {
  require_numeric(a, "arithmetic");
  require_numeric(b, "arithmetic");
  bool ints = a.kind() == AttrValue::Kind::Int && b.kind() == AttrValue::Kind::Int;
  try {
    if (ints && op != Op::Div) {
      const mpz_class& x = a.as_int();
      const mpz_class& y = b.as_int();
      if (op == Op::Add) return AttrValue(mpz_class(x + y));
      if (op == Op::Sub) return AttrValue(mpz_class(x - y));
      return AttrValue(mpz_class(x * y));
    }
    if (op == Op::Div) {
      if (ints) {
        if (sgn(b.as_int()) == 0) throw EvalError("division by zero");
        mpq_class q(a.as_int(), b.as_int());
        q.canonicalize();
        return AttrValue(TimeValue::rational(q));
      }
      TimeValue x = a.to_time(), y = b.to_time();
      if (y.is_zero()) throw EvalError("division by zero");
      if (y.is_infinite()) {
        if (x.is_infinite()) throw EvalError("INF / INF is undefined");
        return AttrValue(TimeValue(0));
      }
      if (x.is_infinite()) return AttrValue(TimeValue::infinity());
      return AttrValue(TimeValue::rational(mpq_class(x.value() / y.value())));
    }
    TimeValue x = a.to_time(), y = b.to_time();
    if (op == Op::Add) return AttrValue(x + y);
    if (op == Op::Sub) return AttrValue(subtract(x, y));
    return AttrValue(x * y);
  } catch (const std::domain_error& e) {
    throw EvalError(e.what());
  }
}

AttrValue call(const std::string& fn, const AttrValue& a, const AttrValue& b) {
  require_numeric(a, fn.c_str());
  require_numeric(b, fn.c_str());
  if (a.kind() == AttrValue::Kind::Int && b.kind() == AttrValue::Kind::Int) {
    const mpz_class& x = a.as_int();
    const mpz_class& y = b.as_int();
    if (fn == "min") return AttrValue(mpz_class(x < y ? x : y));
    if (fn == "max") return AttrValue(mpz_class(x < y ? y : x));
    mpz_class d = x - y;
    return AttrValue(mpz_class(sgn(d) < 0 ? mpz_class(0) : d));
  }
  if (fn == "min") return compare_num(a, b) <= 0 ? AttrValue(a.to_time()) : AttrValue(b.to_time());
  if (fn == "max") return compare_num(a, b) >= 0 ? AttrValue(a.to_time()) : AttrValue(b.to_time());
  if (b.kind() == AttrValue::Kind::Int && sgn(b.as_int()) < 0) return arithmetic(Op::Add, a, AttrValue(mpz_class(-b.as_int())));
  return AttrValue(monus(a.to_time(), b.to_time()));
}

const Configuration& scope_config(PropScope scope, const EvalContext& ctx) {
  switch (scope) {
    case PropScope::Pre:
      if (ctx.pre) return *ctx.pre;
      break;
    case PropScope::Post:
      if (ctx.post) return ctx.post();
      throw EvalError("post-state proposition evaluated outside a rule application");
    case PropScope::Sat:
      break;
  }
  if (!ctx.config) throw EvalError("proposition evaluated without a configuration");
  return *ctx.config;
}

bool exists(const ElemPattern& pattern, const Expr* cond, const Bindings& b, const EvalContext& ctx) {
  if (!ctx.config) throw EvalError("'exists' evaluated without a configuration");
  auto satisfied = [&](Bindings& local, std::vector<Deferred>& deferred) {
    if (!check_deferred(deferred, local, ctx)) return false;
    return !cond || evaluate_bool(*cond, local, ctx);
  };
  if (const auto* op = std::get_if<ObjectPattern>(&pattern.v)) {
    for (const auto& o : ctx.config->objects()) {
      Bindings local = b;
      std::vector<Deferred> deferred;
      if (match_object(*op, o, local, ctx, deferred) && satisfied(local, deferred)) return true;
    }
    return false;
  }
  const auto& mp = std::get<MessagePattern>(pattern.v);
  for (const auto& m : ctx.config->messages()) {
    Bindings local = b;
    std::vector<Deferred> deferred;
    if (match_message(mp, m, local, ctx, deferred) && satisfied(local, deferred)) return true;
  }
  return false;
}

AttrValue parse_arg(const Model& model, const std::string& type, const std::string& text) {
  if (type == "Time") return AttrValue(TimeValue::parse(text));
  if (type == "Int") return AttrValue(mpz_class(text, 10));
  if (type == "Bool") {
    if (text == "true" || text == "false") return AttrValue(text == "true");
  } else if (type == "Oid") {
    return AttrValue::oid(text);
  } else if (const EnumDecl* e = model.find_enum(type)) {
    for (const auto& v : e->variants) {
      if (v.name == text && v.params.empty()) return AttrValue(EnumValue{e->name, v.name});
    }
  }
  throw std::invalid_argument("'" + text + "' is not a " + type);
}

}  // namespace

AttrValue coerce(AttrValue v, const std::string& type) {
  if (type == "Time" && v.kind() == AttrValue::Kind::Int) return AttrValue(v.to_time());
  return v;
}

AttrValue evaluate(const Expr& e, const Bindings& b, const EvalContext& ctx) {
  switch (e.kind) {
    case ExprKind::Literal:
      return e.literal;
    case ExprKind::Var: {
      auto it = b.find(e.name);
      if (it == b.end()) throw UnboundVar("variable " + e.name + " is unbound");
      return it->second;
    }
    case ExprKind::Const: {
      auto it = ctx.model->const_values.find(e.name);
      if (it == ctx.model->const_values.end()) throw EvalError("constant " + e.name + " has no value");
      return it->second;
    }
    case ExprKind::OidConst:
      return AttrValue::oid(e.name);
    case ExprKind::EnumConst: {
      auto v = ctx.model->find_variant(e.name);
      if (!v) throw EvalError("unknown enum variant " + e.name);
      return AttrValue(EnumValue{v->first->name, e.name});
    }
    case ExprKind::Ctor: {
      auto v = ctx.model->find_variant(e.name);
      if (!v) throw EvalError("unknown constructor " + e.name);
      RecordValue r{v->first->name, e.name, {}};
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        r.args.push_back(coerce(evaluate(*e.args[i], b, ctx), v->second->params.at(i)));
      }
      return AttrValue(std::move(r));
    }
    case ExprKind::Ident:
      throw EvalError("unresolved name " + e.name);
    case ExprKind::Unary: {
      AttrValue a = evaluate(*e.args[0], b, ctx);
      if (e.op == Op::Not) return AttrValue(!a.as_bool());
      if (a.kind() != AttrValue::Kind::Int) throw EvalError("cannot negate '" + a.str() + "'");
      return AttrValue(mpz_class(-a.as_int()));
    }
    case ExprKind::Binary: {
      if (e.op == Op::And) return AttrValue(evaluate_bool(*e.args[0], b, ctx) && evaluate_bool(*e.args[1], b, ctx));
      if (e.op == Op::Or) return AttrValue(evaluate_bool(*e.args[0], b, ctx) || evaluate_bool(*e.args[1], b, ctx));
      AttrValue x = evaluate(*e.args[0], b, ctx);
      AttrValue y = evaluate(*e.args[1], b, ctx);
      switch (e.op) {
        case Op::Eq:
          return AttrValue(same_value(x, y));
        case Op::Ne:
          return AttrValue(!same_value(x, y));
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: {
          require_numeric(x, "comparison");
          require_numeric(y, "comparison");
          int c = compare_num(x, y);
          bool r = e.op == Op::Lt ? c < 0 : e.op == Op::Le ? c <= 0 : e.op == Op::Gt ? c > 0 : c >= 0;
          return AttrValue(r);
        }
        default:
          return arithmetic(e.op, x, y);
      }
    }
    case ExprKind::Call:
      return call(e.name, evaluate(*e.args[0], b, ctx), evaluate(*e.args[1], b, ctx));
    case ExprKind::If:
      return evaluate_bool(*e.args[0], b, ctx) ? evaluate(*e.args[1], b, ctx) : evaluate(*e.args[2], b, ctx);
    case ExprKind::Exists:
      return AttrValue(exists(*e.pattern, e.args.empty() ? nullptr : e.args[0].get(), b, ctx));
    case ExprKind::PropAtom: {
      Proposition p{e.name, {}};
      for (const auto& a : e.args) p.args.push_back(evaluate(*a, b, ctx));
      return AttrValue(holds(*ctx.model, scope_config(e.scope, ctx), p));
    }
  }
  throw EvalError("unknown expression");
}

bool evaluate_bool(const Expr& e, const Bindings& b, const EvalContext& ctx) {
  AttrValue v = evaluate(e, b, ctx);
  if (v.kind() != AttrValue::Kind::Bool) throw EvalError("expected a boolean, got '" + v.str() + "'");
  return v.as_bool();
}

bool match_term(const Expr& pattern, const AttrValue& value, Bindings& b, const EvalContext& ctx,
                std::vector<Deferred>& deferred) {
  if (pattern.kind == ExprKind::Var) {
    auto it = b.find(pattern.name);
    if (it != b.end()) return same_value(it->second, value);
    b.emplace(pattern.name, value);
    return true;
  }
  if (pattern.kind == ExprKind::Ctor) {
    if (value.kind() != AttrValue::Kind::Record) return false;
    const auto& r = value.as_record();
    if (r.ctor != pattern.name || r.args.size() != pattern.args.size()) return false;
    for (std::size_t i = 0; i < r.args.size(); ++i) {
      if (!match_term(*pattern.args[i], r.args[i], b, ctx, deferred)) return false;
    }
    return true;
  }
  try {
    return same_value(evaluate(pattern, b, ctx), value);
  } catch (const UnboundVar&) {
    deferred.push_back({&pattern, value});
    return true;
  }
}

bool match_object(const ObjectPattern& p, const ObjectInstance& o, Bindings& b, const EvalContext& ctx,
                  std::vector<Deferred>& deferred) {
  if (p.cls != o.cls) return false;
  if (!match_term(*p.oid, AttrValue::oid(o.oid), b, ctx, deferred)) return false;
  for (const auto& [name, term] : p.attrs) {
    const AttrValue* v = o.find(name);
    if (!v || !match_term(*term, *v, b, ctx, deferred)) return false;
  }
  return true;
}

bool match_message(const MessagePattern& p, const MessageInstance& m, Bindings& b, const EvalContext& ctx,
                   std::vector<Deferred>& deferred) {
  if (p.name != m.name || p.args.size() != m.args.size()) return false;
  for (std::size_t i = 0; i < m.args.size(); ++i) {
    if (!match_term(*p.args[i], m.args[i], b, ctx, deferred)) return false;
  }
  if (p.delay && !match_term(*p.delay, AttrValue(m.delay), b, ctx, deferred)) return false;
  return true;
}

bool check_deferred(const std::vector<Deferred>& deferred, const Bindings& b, const EvalContext& ctx) {
  for (const auto& d : deferred) {
    if (!same_value(evaluate(*d.expr, b, ctx), d.value)) return false;
  }
  return true;
}

bool holds(const Model& model, const Configuration& config, const Proposition& prop) {
  const PropDecl* decl = model.find_prop(prop.name);
  if (!decl) throw EvalError("unknown proposition " + prop.name);
  if (decl->params.size() != prop.args.size()) throw EvalError("wrong number of arguments for " + prop.name);
  Bindings b;
  for (std::size_t i = 0; i < prop.args.size(); ++i) b.emplace(decl->params[i], prop.args[i]);
  EvalContext ctx;
  ctx.model = &model;
  ctx.config = &config;
  return evaluate_bool(*decl->predicate, b, ctx);
}

Proposition parse_proposition(const Model& model, const std::string& text) {
  auto fail = [&](const std::string& why) -> Proposition {
    throw ModelError({Diagnostic{Diagnostic::Kind::Declaration, {}, "proposition '" + text + "': " + why}});
  };
  auto build = [&](const PropDecl& decl, const std::vector<std::string>& args) {
    if (decl.params.size() != args.size()) fail("expects " + std::to_string(decl.params.size()) + " argument(s)");
    Proposition p{decl.name, {}};
    for (std::size_t i = 0; i < args.size(); ++i) {
      try {
        p.args.push_back(parse_arg(model, model.var_types.at(decl.params[i]), args[i]));
      } catch (const std::exception& e) {
        fail(e.what());
      }
    }
    return p;
  };
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t");
    auto z = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
  };
  if (auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')') fail("missing ')'");
    const PropDecl* decl = model.find_prop(trim(text.substr(0, open)));
    if (!decl) fail("not declared");
    std::vector<std::string> args;
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    while (!trim(inner).empty()) {
      auto comma = inner.find(',', start);
      args.push_back(trim(inner.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return build(*decl, args);
  }
  if (const PropDecl* decl = model.find_prop(text)) return build(*decl, {});
  for (std::size_t us = text.find('_'); us != std::string::npos; us = text.find('_', us + 1)) {
    const PropDecl* decl = model.find_prop(text.substr(0, us));
    if (!decl) continue;
    std::vector<std::string> args;
    std::size_t start = us + 1;
    while (true) {
      auto next = text.find('_', start);
      args.push_back(text.substr(start, next - start));
      if (next == std::string::npos) break;
      start = next + 1;
    }
    if (args.size() == decl->params.size()) return build(*decl, args);
  }
  return fail("not declared");
}

}  // namespace tickcheck
