#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tickcheck {

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Diagnostic {
  enum class Kind { Syntax, Type, UnboundVariable, Flatness, Duplicate, Declaration };

  Kind kind = Kind::Syntax;
  SourcePos pos;
  std::string message;

  std::string str() const;
};

const char* to_string(Diagnostic::Kind kind);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the parser and validator; carries every diagnostic found.
class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Expression, guard or proposition evaluation failed at run time.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A trace, projection or replay does not match the model it claims to come from.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Broken engine precondition, e.g. a tick longer than mte.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tickcheck
