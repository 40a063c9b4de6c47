#include <sstream>

#include "tickcheck/model.hpp"

namespace tickcheck {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      switch (e.op) {
        case Op::Or:
          return 1;
        case Op::And:
          return 2;
        case Op::Add:
        case Op::Sub:
          return 5;
        case Op::Mul:
        case Op::Div:
          return 6;
        default:
          return 4;
      }
    case ExprKind::Unary:
      return e.op == Op::Not ? 3 : 7;
    case ExprKind::Literal:
      return e.literal.kind() == AttrValue::Kind::Int && sgn(e.literal.as_int()) < 0 ? 7 : 8;
    default:
      return 8;
  }
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Add:
      return "+";
    case Op::Sub:
      return "-";
    case Op::Mul:
      return "*";
    case Op::Div:
      return "/";
    case Op::Lt:
      return "<";
    case Op::Le:
      return "<=";
    case Op::Gt:
      return ">";
    case Op::Ge:
      return ">=";
    case Op::Eq:
      return "==";
    case Op::Ne:
      return "=/=";
    case Op::And:
      return "and";
    case Op::Or:
      return "or";
    case Op::Not:
      return "not";
    case Op::Neg:
      return "-";
  }
  return "?";
}

bool contains_gt(const Expr& e) {
  if (e.kind == ExprKind::Binary && e.op == Op::Gt) return true;
  for (const auto& a : e.args) {
    if (contains_gt(*a)) return true;
  }
  return false;
}

std::string print_at(const Expr& e, int min_prec);
std::string print_pattern(const ElemPattern& p);

std::string literal_text(const AttrValue& v) {
  if (v.kind() == AttrValue::Kind::Time) {
    const TimeValue& t = v.as_time_exact();
    if (t.is_finite() && t.is_integer()) return t.str() + ".0";
  }
  return v.str();
}

std::string list(const std::vector<ExprPtr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += print_at(*args[i], 1);
  }
  return out;
}

std::string print_bare(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
      return literal_text(e.literal);
    case ExprKind::Ident:
    case ExprKind::Var:
    case ExprKind::Const:
    case ExprKind::OidConst:
    case ExprKind::EnumConst:
      return e.name;
    case ExprKind::Ctor:
    case ExprKind::Call:
      return e.name + "(" + list(e.args) + ")";
    case ExprKind::Unary:
      if (e.op == Op::Not) return "not " + print_at(*e.args[0], 3);
      return "- " + print_at(*e.args[0], 7);
    case ExprKind::Binary: {
      int p = precedence(e);
      int left = p == 4 ? 5 : p;
      int right = p == 4 ? 5 : p + 1;
      return print_at(*e.args[0], left) + " " + op_text(e.op) + " " + print_at(*e.args[1], right);
    }
    case ExprKind::If:
      return "if " + print_at(*e.args[0], 1) + " then " + print_at(*e.args[1], 1) + " else " + print_at(*e.args[2], 1) +
             " fi";
    case ExprKind::Exists: {
      std::string out = "(exists " + print_pattern(*e.pattern);
      if (!e.args.empty()) out += " : " + print_at(*e.args[0], 1);
      return out + ")";
    }
    case ExprKind::PropAtom: {
      const char* scope = e.scope == PropScope::Sat ? "sat" : e.scope == PropScope::Pre ? "pre" : "post";
      std::string out = std::string(scope) + "(" + e.name;
      if (!e.args.empty()) out += "(" + list(e.args) + ")";
      return out + ")";
    }
  }
  return "?";
}

std::string print_at(const Expr& e, int min_prec) {
  std::string s = print_bare(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string attr_expr(const Expr& e) {
  std::string s = print_at(e, 1);
  return contains_gt(e) ? "(" + s + ")" : s;
}

std::string print_object(const Expr& oid, const std::string& cls,
                         const std::vector<std::pair<std::string, ExprPtr>>& attrs) {
  std::string out = "< " + attr_expr(oid) + " : " + cls + " |";
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    out += i ? ", " : " ";
    out += attrs[i].first + " : " + attr_expr(*attrs[i].second);
  }
  return out + " >";
}

std::string print_message(const std::string& name, const std::vector<ExprPtr>& args) {
  return args.empty() ? name : name + "(" + list(args) + ")";
}

std::string print_pattern(const ElemPattern& p) {
  if (const auto* op = std::get_if<ObjectPattern>(&p.v)) return print_object(*op->oid, op->cls, op->attrs);
  const auto& mp = std::get<MessagePattern>(p.v);
  std::string m = print_message(mp.name, mp.args);
  if (mp.delay) return "dly(" + m + ", " + print_at(*mp.delay, 1) + ")";
  return m;
}

std::string print_effect(const ElemEffect& e) {
  if (const auto* oe = std::get_if<ObjectEffect>(&e.v)) return print_object(*oe->oid, oe->cls, oe->updates);
  const auto& em = std::get<MessageEmit>(e.v);
  std::string m = print_message(em.name, em.args);
  if (em.delays.empty()) return m;
  if (em.choice) return "dly(" + m + ", {" + list(em.delays) + "})";
  return "dly(" + m + ", " + print_at(*em.delays[0], 1) + ")";
}

std::string names(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

}  // namespace

std::string print_expr(const Expr& e) { return print_at(e, 1); }

std::string print_model(const Model& m) {
  std::ostringstream os;
  for (const auto& e : m.enums) {
    os << "enum " << e.name << " =";
    for (std::size_t i = 0; i < e.variants.size(); ++i) {
      os << (i ? " | " : " ") << e.variants[i].name;
      if (!e.variants[i].params.empty()) os << "(" << names(e.variants[i].params) << ")";
    }
    os << " .\n";
  }
  for (const auto& c : m.classes) {
    os << "class " << c.name;
    for (std::size_t i = 0; i < c.attrs.size(); ++i) os << (i ? ", " : " | ") << c.attrs[i].name << " : " << c.attrs[i].type;
    os << " .\n";
  }
  for (const auto& msg : m.messages) {
    os << "msg " << msg.name;
    if (!msg.params.empty()) os << "(" << names(msg.params) << ")";
    os << " .\n";
  }
  for (const auto& v : m.vars) {
    os << (v.names.size() == 1 ? "var" : "vars");
    for (const auto& n : v.names) os << " " << n;
    os << " : " << v.type << " .\n";
  }
  for (const auto& c : m.consts) os << "const " << c.name << " : " << c.type << " = " << print_expr(*c.value) << " .\n";
  os << "\n";
  for (const auto& r : m.rules) {
    os << "rl [" << r.label << "] :";
    if (r.lhs.empty()) os << " none";
    for (const auto& p : r.lhs) os << " " << print_pattern(p);
    os << "\n  =>";
    if (r.rhs.empty()) os << " none";
    for (const auto& e : r.rhs) os << " " << print_effect(e);
    if (r.guard) os << "\n  if " << print_expr(*r.guard);
    os << " .\n";
  }
  if (!m.rules.empty()) os << "\n";
  for (const auto& d : m.deltas) {
    os << "delta(" << print_object(*d.pattern.oid, d.pattern.cls, d.pattern.attrs) << ", " << d.time_var << ")\n  = "
       << print_object(*d.result.oid, d.result.cls, d.result.updates) << " .\n";
  }
  for (const auto& d : m.mtes) os << "mte(" << print_pattern(d.pattern) << ") = " << print_expr(*d.value) << " .\n";
  for (const auto& p : m.props) {
    os << "prop " << p.name;
    if (!p.params.empty()) os << "(" << names(p.params) << ")";
    os << " := " << print_expr(*p.predicate) << " .\n";
  }
  for (const auto& i : m.inits) {
    os << "init " << i.name << " :=";
    if (i.elements.empty()) os << " none";
    for (const auto& e : i.elements) os << "\n  " << print_effect(e);
    os << " .\n";
  }
  return os.str();
}

}  // namespace tickcheck
