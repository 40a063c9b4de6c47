#include "tickcheck/trace.hpp"

#include <cstdint>
#include <cstdio>
#include "json.hpp"

namespace tickcheck {

namespace {

std::string message_text(const MessageInstance& m) {
  std::string out = m.name;
  if (!m.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < m.args.size(); ++i) out += (i ? ", " : "") + m.args[i].str();
    out += ")";
  }
  if (m.deliverable()) return out;
  return "dly(" + out + ", " + m.delay.str() + ")";
}

}  // namespace

std::string render(const Configuration& config) {
  std::string out;
  for (const auto& o : config.objects()) {
    if (!out.empty()) out += " ";
    out += "< " + o.oid + " : " + o.cls + " |";
    for (std::size_t i = 0; i < o.attrs.size(); ++i) {
      out += i ? ", " : " ";
      out += o.attrs[i].first + " : " + o.attrs[i].second.str();
    }
    out += " >";
  }
  for (const auto& m : config.messages()) {
    if (!out.empty()) out += " ";
    out += message_text(m);
  }
  return out.empty() ? "none" : out;
}

std::string render_path(const TimedPath& path, std::optional<std::size_t> loop_start) {
  std::string out;
  const bool deadlock = loop_start && *loop_start == path.steps.size() && path.end == TimedPath::End::Deadlocked;
  for (std::size_t i = 0; i < path.num_states(); ++i) {
    if (i > 0) {
      const Step& s = path.steps[i - 1];
      out += s.is_tick() ? "=>[" + s.label + " " + s.duration.str() + "]\n" : "=>[" + s.label + "]\n";
    }
    if (loop_start && *loop_start == i && !deadlock) out += "--- loop starts here\n";
    out += "{" + render(path.state(i).config) + "} in time " + path.state(i).elapsed.str() + "\n";
  }
  if (loop_start) {
    if (deadlock) {
      out += "--- deadlock: time stands still\n";
    } else {
      out += "--- back to the loop start\n";
    }
  }
  return out;
}

std::string model_hash(const Model& model) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : print_model(model)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_trace(const TraceHeader& header, const TimedPath& path, std::optional<std::size_t> loop_start) {
  nlohmann::ordered_json doc;
  doc["header"] = {{"model_hash", header.model_hash},
                   {"property", header.property},
                   {"strategy", header.strategy},
                   {"verdict", header.verdict}};
  if (loop_start) doc["header"]["loop_start"] = *loop_start;
  auto steps = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < path.num_states(); ++i) {
    nlohmann::ordered_json rec;
    rec["index"] = i;
    if (i == 0) {
      rec["label"] = nullptr;
      rec["duration"] = "0";
    } else {
      rec["label"] = path.steps[i - 1].label;
      rec["duration"] = path.steps[i - 1].duration.str();
    }
    rec["elapsed"] = path.state(i).elapsed.str();
    rec["state"] = render(path.state(i).config);
    steps.push_back(std::move(rec));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

}  // namespace tickcheck
