#include "tickcheck/bundled.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tickcheck/errors.hpp"

namespace tickcheck {

namespace detail {
const std::map<std::string, std::string>& bundled_sources();
}

namespace fs = std::filesystem;

std::vector<std::string> bundled_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::bundled_sources()) out.push_back(name);
  return out;
}

const std::string& bundled_source(const std::string& name) {
  const auto& all = detail::bundled_sources();
  auto it = all.find(name);
  if (it == all.end()) throw Error("unknown bundled model '" + name + "'");
  return it->second;
}

Model load_bundled(const std::string& name, const ParseOptions& options) {
  return parse_model(bundled_source(name), options);
}

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ModelSource find_model(const std::string& arg) {
  if (auto text = read_file(arg)) return {*text, arg};
  if (const char* env = std::getenv("TICKCHECK_MODELS")) {
    std::stringstream dirs(env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (dir.empty()) continue;
      for (const fs::path& p : {fs::path(dir) / arg, fs::path(dir) / (arg + ".rtm"), fs::path(dir) / fs::path(arg).filename()}) {
        if (auto text = read_file(p)) return {*text, p.string()};
      }
    }
  }
  std::string stem = fs::path(arg).stem().string();
  const auto& all = detail::bundled_sources();
  for (const std::string& name : {arg, stem}) {
    if (auto it = all.find(name); it != all.end()) return {it->second, "bundled:" + name};
  }
  throw Error("model '" + arg + "' not found (no such file, not in TICKCHECK_MODELS, not a bundled model)");
}

}  // namespace tickcheck
