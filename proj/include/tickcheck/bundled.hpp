#pragma once

#include <string>
#include <vector>

#include "tickcheck/model.hpp"

namespace tickcheck {

std::vector<std::string> bundled_names();

/// Throws Error for an unknown name.
const std::string& bundled_source(const std::string& name);
Model load_bundled(const std::string& name, const ParseOptions& options = {});

struct ModelSource {
  std::string text;
  std::string origin;  // file path, or "bundled:<name>"
};

/// Looks `arg` up as a file, then in each directory of TICKCHECK_MODELS
/// (colon separated), then as a bundled model name or file stem.
ModelSource find_model(const std::string& arg);

}  // namespace tickcheck
