#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace suitegen::minipy::detail {

enum class TokenKind {
  Name,
  Keyword,
  Int,
  Real,
  String,
  Op,  // operators and punctuation
  Newline,
  Indent,
  Dedent,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier, keyword, operator, or decoded string
  std::int64_t int_value = 0;
  double real_value = 0.0;
  int line = 0;
  int column = 0;
};

/// Splits source into tokens with Python-style indentation tracking.
/// Throws ParseError on lexical errors.
std::vector<Token> tokenize(std::string_view source);

}  // namespace suitegen::minipy::detail
