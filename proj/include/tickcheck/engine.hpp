#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tickcheck/eval.hpp"
#include "tickcheck/model.hpp"
#include "tickcheck/state.hpp"

namespace tickcheck {

/// How tick durations are chosen.
class SamplingStrategy {
 public:
  enum class Kind { Fixed, Maximal };

  /// Throws std::invalid_argument unless delta is finite and positive.
  static SamplingStrategy fixed(TimeValue delta);
  static SamplingStrategy maximal(std::optional<TimeValue> default_when_inf = std::nullopt);
  /// `maximal`, `maximal:<d>` or `fixed:<d>`.
  static SamplingStrategy parse(const std::string& text);

  Kind kind() const { return kind_; }
  const TimeValue& delta() const { return delta_; }
  const std::optional<TimeValue>& default_when_inf() const { return default_; }
  std::string str() const;

 private:
  Kind kind_ = Kind::Maximal;
  TimeValue delta_;
  std::optional<TimeValue> default_;
};

struct Step {
  std::string label;  // rule label, or "tick"
  TimeValue duration;
  GlobalState target;
  std::optional<std::size_t> rule;  // index into Model::rules; empty for ticks

  bool is_tick() const { return !rule; }
};

struct TimedPath {
  enum class End { Deadlocked, Truncated };

  GlobalState initial;
  std::vector<Step> steps;
  End end = End::Truncated;
  std::string diagnostic;

  std::size_t num_states() const { return steps.size() + 1; }
  const GlobalState& state(std::size_t i) const { return i == 0 ? initial : steps[i - 1].target; }
  const GlobalState& last() const { return state(steps.size()); }
};

/// One way of matching a rule's left-hand side: variable bindings plus the
/// indices of the consumed objects and messages.
struct Match {
  Bindings bindings;
  std::vector<std::size_t> objects;
  std::vector<std::size_t> messages;
};

std::vector<Match> match(const Model& model, const RuleDecl& rule, const Configuration& config);

/// An enabled application of a rule: a match whose guard holds, with one
/// resolution of every delay choice set.
struct Firing {
  std::size_t rule;
  Bindings bindings;
  std::vector<std::size_t> choice;
  Configuration target;
};

std::vector<Firing> rule_firings(const Model& model, const Configuration& config, std::size_t rule_index);

std::vector<Step> instantaneous_successors(const Model& model, const GlobalState& state);
TimeValue mte(const Model& model, const Configuration& config);
/// Throws InternalError if t exceeds mte(config).
Configuration delta(const Model& model, const Configuration& config, const TimeValue& t);
std::vector<Step> tick_successors(const Model& model, const GlobalState& state, const SamplingStrategy& strategy);
/// Instantaneous steps first, then the tick step if any.
std::vector<Step> successors(const Model& model, const GlobalState& state, const SamplingStrategy& strategy);

enum class ChoicePolicy { First, Random };

struct SimulateOptions {
  ChoicePolicy policy = ChoicePolicy::First;
  std::uint64_t seed = 0;
  std::size_t step_budget = 100000;
  std::size_t zeno_limit = 10000;
};

/// Follows one path until the next step would pass `bound`, the state
/// deadlocks, or a budget runs out.
TimedPath simulate(const Model& model, const GlobalState& state, const SamplingStrategy& strategy,
                   const TimeValue& bound, const SimulateOptions& options = {});

}  // namespace tickcheck
