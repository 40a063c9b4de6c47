#pragma once

#include <memory>
#include <optional>
#include <string>

#include "tickcheck/engine.hpp"
#include "tickcheck/model.hpp"

namespace tickcheck {

inline constexpr const char* kClockClass = "Clock";
inline constexpr const char* kBrClock = "#clock-br";
inline constexpr const char* kMsClock = "#clock-ms";

/// An instrumented model together with what it was built from.
struct TransformResult {
  enum class Kind { BoundedResponse, MinSeparation };

  Kind kind = Kind::BoundedResponse;
  std::shared_ptr<const Model> original;
  Model model;
  Configuration init;
  Proposition p;
  Proposition q;  // bounded response only
  TimeValue r;
  std::string clock_oid;
};

/// Observer for [] (p -> <>le(r) q). Throws ModelError for undeclared
/// propositions, a non-flat model or a name clash with the injected clock,
/// and std::invalid_argument unless r is finite and positive.
TransformResult br_transform(const Model& model, const Configuration& init, const Proposition& p,
                             const Proposition& q, const TimeValue& r);
/// Observer for [] (p -> (p W []le(r) ~p)).
TransformResult ms_transform(const Model& model, const Configuration& init, const Proposition& p, const TimeValue& r);

struct ClockReading {
  TimeValue value;
  bool on = false;
};

/// Throws IntegrityError unless exactly one observer clock is present.
ClockReading read_clock(const Configuration& config);
Configuration project(const Configuration& config);
GlobalState project(const GlobalState& state);

/// BR: clock > r. MS: clock off and clock < r.
bool clock_violation(const TransformResult& t, const Configuration& config);

/// For every match of every original rule in the projected state, exactly one
/// of its four variants must fire. Returns a description of the first
/// violation.
std::optional<std::string> check_exclusivity(const TransformResult& t, const Configuration& config);

}  // namespace tickcheck
