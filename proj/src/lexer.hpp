#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tickcheck/errors.hpp"

namespace tickcheck::detail {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;

  bool is(std::string_view punct_or_word) const {
    return (kind == Tok::Punct || kind == Tok::Ident) && text == punct_or_word;
  }
};

/// Splits DSL or formula text into tokens. `---` starts a comment. Inside an
/// identifier a `-` is kept when it joins two letters (`X-ray`), so binary
/// minus between names needs surrounding spaces. Throws ModelError on a bad
/// character.
std::vector<Token> tokenize(std::string_view source);

}  // namespace tickcheck::detail
