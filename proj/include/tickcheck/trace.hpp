#pragma once

#include <optional>
#include <string>

#include "tickcheck/checker.hpp"

namespace tickcheck {

/// `< oid : Class | attr : value, ... >` for objects, `dly(m(args), d)` for
/// in-flight messages.
std::string render(const Configuration& config);

/// `{state}` lines joined by `=>[label]` arrows. Ticks show their duration.
std::string render_path(const TimedPath& path, std::optional<std::size_t> loop_start = std::nullopt);

/// Stable FNV-1a digest of the printed model.
std::string model_hash(const Model& model);

struct TraceHeader {
  std::string model_hash;
  std::string property;
  std::string strategy;
  std::string verdict;
};

/// One JSON document: the header plus {index, label, duration, elapsed,
/// state} per path position (index 0 is the initial state).
std::string json_trace(const TraceHeader& header, const TimedPath& path,
                       std::optional<std::size_t> loop_start = std::nullopt);

}  // namespace tickcheck
