#include "lexer.hpp"

#include <cctype>

namespace tickcheck::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::string_view kPuncts[] = {"=/=", "<=", ">=", "=>", "==", "!=", ":=", "->", "/\\", "\\/", "[]", "<>",
                                        "<",   ">",  "|",  ":",  ",",  ".",  "(",  ")",  "[",  "]",  "{",  "}",
                                        "=",   "+",  "-",  "*",  "/",  "~"};

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 3) == "---") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size()) {
        if (ident_char(src[j])) {
          ++j;
        } else if (src[j] == '-' && j + 1 < src.size() && std::isalpha(static_cast<unsigned char>(src[j + 1])) &&
                   std::isalpha(static_cast<unsigned char>(src[j - 1]))) {
          ++j;
        } else {
          break;
        }
      }
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && (src[j] == '.' || src[j] == '/') && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto p : kPuncts) {
      if (src.substr(i, p.size()) == p) {
        t.kind = Tok::Punct;
        t.text = std::string(p);
        out.push_back(t);
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ModelError({Diagnostic{Diagnostic::Kind::Syntax, t.pos, std::string("unexpected character '") + c + "'"}});
    }
  }
  Token end;
  end.kind = Tok::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace tickcheck::detail
