#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tickcheck/engine.hpp"
#include "tickcheck/transform.hpp"

namespace tickcheck {

struct SearchOptions {
  SamplingStrategy strategy = SamplingStrategy::maximal();
  std::optional<TimeValue> time_bound;
  std::optional<std::size_t> step_bound;
  std::optional<std::size_t> state_bound;
  std::size_t zeno_limit = 10000;
  bool monitor_tick_invariance = true;
  /// Check rule-variant exclusivity on every expanded instrumented state.
  bool assert_exclusivity = false;
  std::size_t jobs = 1;
};

struct Verdict {
  enum class Kind { Satisfied, Counterexample, BoundReached, PreconditionFailed };

  Kind kind = Kind::Satisfied;
  /// Counterexample (ending in the violating state) or the precondition
  /// witness (ending in the offending tick).
  TimedPath path;
  /// Liveness counterexamples are lassos: the path loops back here.
  std::optional<std::size_t> loop_start;
  std::string message;
  std::size_t states = 0;
  std::size_t depth = 0;
  std::size_t frontier = 0;
};

const char* to_string(Verdict::Kind k);

/// Called on every tick edge; a returned message aborts the search.
using TickMonitor = std::function<std::optional<std::string>(const GlobalState&, const GlobalState&)>;
/// Called on every expanded state; a returned message is an internal error.
using StateCheck = std::function<std::optional<std::string>(const GlobalState&)>;

struct SearchResult {
  /// Satisfied: space exhausted. Counterexample: `n` matches found.
  Verdict::Kind kind = Verdict::Kind::Satisfied;
  std::vector<TimedPath> matches;
  TimedPath witness;
  std::string message;
  std::size_t states = 0;
  std::size_t depth = 0;
  std::size_t frontier = 0;
};

/// Breadth-first search for up to `n` states satisfying `goal`. Matches come
/// in BFS order, so the first has the fewest steps.
SearchResult search(const Model& model, const GlobalState& init, const std::function<bool(const GlobalState&)>& goal,
                    std::size_t n, const SearchOptions& opts, const TickMonitor& monitor = {},
                    const StateCheck& check = {});

/// Search with a DSL predicate over the configuration, e.g.
/// `exists < L : Lamp | lit : true >`.
SearchResult search(const Model& model, const GlobalState& init, const std::string& predicate, std::size_t n,
                    const SearchOptions& opts);

/// Tick monitor requiring every listed proposition to keep its value across ticks.
TickMonitor tick_invariance_monitor(const Model& model, std::vector<Proposition> props);

Verdict check_bounded_response(const Model& model, const Configuration& init, const Proposition& p,
                               const Proposition& q, const TimeValue& r, const SearchOptions& opts,
                               bool with_liveness = false);
Verdict check_min_separation(const Model& model, const Configuration& init, const Proposition& p, const TimeValue& r,
                             const SearchOptions& opts);
/// [] (p -> <> q) over the finite reachable graph, deadlocks counted as
/// self-loops.
Verdict check_response_liveness(const Model& model, const Configuration& init, const Proposition& p,
                                const Proposition& q, const SearchOptions& opts);

/// Instrumentation plus search, exposing the transformed model.
Verdict check_instrumented(const TransformResult& t, const SearchOptions& opts);

struct ReplayStep {
  std::string label;
  TimeValue duration;
  /// Index among the successors with this label and duration.
  std::size_t choice = 0;
};

std::vector<ReplayStep> record(const Model& model, const TimedPath& path, const SamplingStrategy& strategy);
/// Throws IntegrityError if a step is not a successor of the current state.
TimedPath replay(const Model& model, const GlobalState& init, const std::vector<ReplayStep>& steps,
                 const SamplingStrategy& strategy);

}  // namespace tickcheck
