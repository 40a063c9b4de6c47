#pragma once

#include <string>
#include <vector>

#include "tickcheck/model.hpp"

/// Small constructors for expression trees built in code rather than parsed.
namespace tickcheck::build {

ExprPtr literal(AttrValue value);
ExprPtr ident(std::string name);
ExprPtr var(std::string name);
ExprPtr oid(std::string name);
ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
ExprPtr negate(ExprPtr a);
ExprPtr call(std::string fn, std::vector<ExprPtr> args);
ExprPtr if_then_else(ExprPtr cond, ExprPtr then_e, ExprPtr else_e);
ExprPtr prop_atom(PropScope scope, const Proposition& prop);
/// Conjunction that tolerates a null left operand (absent guard).
ExprPtr conj(ExprPtr a, ExprPtr b);

}  // namespace tickcheck::build
