#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tickcheck/model.hpp"
#include "tickcheck/state.hpp"

namespace tickcheck {

using Bindings = std::map<std::string, AttrValue>;

/// Where proposition atoms and `exists` look. `post` is built on demand.
struct EvalContext {
  const Model* model = nullptr;
  const Configuration* config = nullptr;
  const Configuration* pre = nullptr;
  std::function<const Configuration&()> post;
};

AttrValue evaluate(const Expr& e, const Bindings& b, const EvalContext& ctx);
bool evaluate_bool(const Expr& e, const Bindings& b, const EvalContext& ctx);

/// Converts Int to Time for Time-typed slots; other values pass through.
AttrValue coerce(AttrValue v, const std::string& type);

/// Pattern matching of a single term against a value, extending `b`.
/// Non-binding subterms whose variables are not yet bound are appended to
/// `deferred` and must be checked once the whole pattern is matched.
struct Deferred {
  const Expr* expr;
  AttrValue value;
};
bool match_term(const Expr& pattern, const AttrValue& value, Bindings& b, const EvalContext& ctx,
                std::vector<Deferred>& deferred);
bool match_object(const ObjectPattern& p, const ObjectInstance& o, Bindings& b, const EvalContext& ctx,
                  std::vector<Deferred>& deferred);
/// Ignores the message delay unless the pattern names one.
bool match_message(const MessagePattern& p, const MessageInstance& m, Bindings& b, const EvalContext& ctx,
                   std::vector<Deferred>& deferred);
bool check_deferred(const std::vector<Deferred>& deferred, const Bindings& b, const EvalContext& ctx);

/// Truth of a ground proposition in a configuration.
bool holds(const Model& model, const Configuration& config, const Proposition& prop);

/// Accepts `p`, `p(NS)` and the flattened `p_NS`. Throws ModelError if the
/// proposition is not declared or the arguments do not fit.
Proposition parse_proposition(const Model& model, const std::string& text);

}  // namespace tickcheck
