#include "tickcheck/errors.hpp"

#include <sstream>

namespace tickcheck {

const char* to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::Syntax:
      return "syntax error";
    case Diagnostic::Kind::Type:
      return "type error";
    case Diagnostic::Kind::UnboundVariable:
      return "unbound variable";
    case Diagnostic::Kind::Flatness:
      return "flatness violation";
    case Diagnostic::Kind::Duplicate:
      return "duplicate";
    case Diagnostic::Kind::Declaration:
      return "declaration error";
  }
  return "error";
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << pos.line << ':' << pos.column << ": " << to_string(kind) << ": " << message;
  return os.str();
}

namespace {
std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "invalid model";
  std::string out = diagnostics.front().str();
  if (diagnostics.size() > 1) out += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  return out;
}
}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace tickcheck
