#include "tickcheck/expr_build.hpp"

namespace tickcheck::build {

namespace {
std::shared_ptr<Expr> make(ExprKind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}
}  // namespace

ExprPtr literal(AttrValue value) {
  auto e = make(ExprKind::Literal);
  e->literal = std::move(value);
  return e;
}

ExprPtr ident(std::string name) {
  auto e = make(ExprKind::Ident);
  e->name = std::move(name);
  return e;
}

ExprPtr var(std::string name) {
  auto e = make(ExprKind::Var);
  e->name = std::move(name);
  return e;
}

ExprPtr oid(std::string name) {
  auto e = make(ExprKind::OidConst);
  e->name = std::move(name);
  return e;
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
  auto e = make(ExprKind::Binary);
  e->op = op;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr negate(ExprPtr a) {
  auto e = make(ExprKind::Unary);
  e->op = Op::Not;
  e->args = {std::move(a)};
  return e;
}

ExprPtr call(std::string fn, std::vector<ExprPtr> args) {
  auto e = make(ExprKind::Call);
  e->name = std::move(fn);
  e->args = std::move(args);
  return e;
}

ExprPtr if_then_else(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
  auto e = make(ExprKind::If);
  e->args = {std::move(cond), std::move(then_e), std::move(else_e)};
  return e;
}

ExprPtr prop_atom(PropScope scope, const Proposition& prop) {
  auto e = make(ExprKind::PropAtom);
  e->scope = scope;
  e->name = prop.name;
  for (const auto& a : prop.args) {
    if (a.kind() == AttrValue::Kind::Enum) {
      e->args.push_back(ident(a.as_enum().variant));
    } else if (a.kind() == AttrValue::Kind::Oid) {
      e->args.push_back(ident(a.as_oid().name));
    } else {
      e->args.push_back(literal(a));
    }
  }
  return e;
}

ExprPtr conj(ExprPtr a, ExprPtr b) {
  if (!a) return b;
  return binary(Op::And, std::move(a), std::move(b));
}

}  // namespace tickcheck::build
