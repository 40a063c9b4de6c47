#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tickcheck/engine.hpp"

namespace tickcheck {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Core MTL syntax; every other operator is sugar over these five.
struct Formula {
  enum class Kind { True, Prop, Not, And, Until };

  Kind kind = Kind::True;
  Proposition prop;
  FormulaPtr a, b;
  TimeValue lower;
  TimeValue upper = TimeValue::infinity();
  /// Strict upper bound `< upper` instead of `<= upper`.
  bool upper_open = false;

  std::string str() const;
};

namespace mtl {

FormulaPtr truth();
FormulaPtr atom(Proposition p);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conj(FormulaPtr f, FormulaPtr g);
/// Throws std::invalid_argument unless lower <= upper and upper > 0.
FormulaPtr until(FormulaPtr f, FormulaPtr g, TimeValue lower = 0, TimeValue upper = TimeValue::infinity(),
                 bool upper_open = false);

FormulaPtr falsity();
FormulaPtr disj(FormulaPtr f, FormulaPtr g);
FormulaPtr implies(FormulaPtr f, FormulaPtr g);
FormulaPtr eventually(FormulaPtr f, TimeValue lower = 0, TimeValue upper = TimeValue::infinity(), bool upper_open = false);
FormulaPtr always(FormulaPtr f, TimeValue lower = 0, TimeValue upper = TimeValue::infinity(), bool upper_open = false);
/// (f U g) or [] f.
FormulaPtr weak_until(FormulaPtr f, FormulaPtr g);

/// [] (p -> <>le(r) q)
FormulaPtr bounded_response(const Proposition& p, const Proposition& q, const TimeValue& r);
/// [] (p -> (p W []le(r) ~p)); with `strict` the inner bound is `< r`.
FormulaPtr min_separation(const Proposition& p, const TimeValue& r, bool strict);

/// Parses `[] (p -> <>le(5) q)`, `p U[le 3] q`, `[]lt(2) ~p`, `p W q`,
/// `/\`, `\/`, `->`, `true`, `false`. Propositions are resolved with
/// parse_proposition. Throws ModelError on bad input.
FormulaPtr parse(const Model& model, const std::string& text);

}  // namespace mtl

enum class Truth { False, True, Unknown };

const char* to_string(Truth t);

/// A finite path plus how it continues: stuttering in its last state,
/// looping back to `loop_start`, or unknown.
struct OraclePath {
  enum class Kind { Deadlock, Lasso, Truncated };

  TimedPath path;
  Kind kind = Kind::Truncated;
  std::size_t loop_start = 0;
  TimeValue loop_duration;
  std::string loop_label;
};

using Labeling = std::function<bool(const Configuration&, const Proposition&)>;

/// Default labeling: the model's own proposition declarations.
Labeling model_labeling(const Model& model);

/// Pointwise satisfaction at position 0. Truncated paths yield Unknown
/// when the prefix does not determine the answer.
Truth eval_path(const Labeling& label, const OraclePath& path, const Formula& f);

struct OracleOptions {
  TimeValue time_bound = 1000;
  std::size_t step_bound = 200;
  std::size_t path_budget = 1000000;
  /// A state may occur this many times on one path; every revisit also
  /// closes a lasso.
  std::size_t max_visits = 2;
};

struct OracleResult {
  Truth verdict = Truth::Unknown;  // True = holds on every path
  std::optional<OraclePath> counterexample;
  std::size_t paths = 0;
  bool budget_exhausted = false;
};

/// Enumerates every path from `init` (depth first, lasso closure on
/// revisits, truncation at the bounds) and evaluates each formula on each.
std::vector<OracleResult> check_all_paths(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                          const std::vector<FormulaPtr>& formulas, const OracleOptions& options = {},
                                          const Labeling& label = {});
OracleResult check_all_paths(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                             const FormulaPtr& formula, const OracleOptions& options = {}, const Labeling& label = {});

/// p U<=r q, <>le(r) p and []le(r) p over all paths.
OracleResult check_time_bounded_until(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                      const Proposition& p, const Proposition& q, const TimeValue& r,
                                      const OracleOptions& options = {});
OracleResult check_time_bounded_eventually(const Model& model, const Configuration& init,
                                           const SamplingStrategy& strategy, const Proposition& p, const TimeValue& r,
                                           const OracleOptions& options = {});
OracleResult check_time_bounded_always(const Model& model, const Configuration& init, const SamplingStrategy& strategy,
                                       const Proposition& p, const TimeValue& r, const OracleOptions& options = {});

}  // namespace tickcheck
