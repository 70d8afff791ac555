#include "minipy_lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_set>

#include "suitegen/minipy.hpp"

namespace suitegen::minipy::detail {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "False", "None", "True", "and", "as", "assert", "async", "await", "break",
      "class", "continue", "def", "del", "elif", "else", "except", "finally", "for",
      "from", "global", "if", "import", "in", "is", "lambda", "nonlocal", "not", "or",
      "pass", "raise", "return", "try", "while", "with", "yield"};
  return kw;
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) {
      if (at_line_start_ && depth_ == 0) {
        if (!handle_indentation()) continue;
      }
      scan_token();
    }
    if (!tokens_.empty() && tokens_.back().kind != TokenKind::Newline &&
        tokens_.back().kind != TokenKind::Dedent) {
      push(TokenKind::Newline, "", line_, col());
    }
    if (depth_ > 0) throw ParseError(line_, col(), "unexpected end of input inside brackets");
    while (indents_.size() > 1) {
      indents_.pop_back();
      push(TokenKind::Dedent, "", line_, 1);
    }
    push(TokenKind::End, "", line_, 1);
    return std::move(tokens_);
  }

 private:
  int col() const { return static_cast<int>(pos_ - line_begin_) + 1; }

  void push(TokenKind kind, std::string text, int line, int column) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = column;
    tokens_.push_back(std::move(t));
  }

  void newline() {
    ++pos_;
    ++line_;
    line_begin_ = pos_;
    at_line_start_ = depth_ == 0;
  }

  // Measures leading whitespace of a logical line. Returns false when the
  // line was blank or comment-only and has been consumed.
  bool handle_indentation() {
    int width = 0;
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\f')) {
      width = src_[pos_] == '\t' ? (width / 8 + 1) * 8 : width + 1;
      ++pos_;
    }
    if (pos_ >= src_.size()) return false;
    const char c = src_[pos_];
    if (c == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      if (pos_ < src_.size()) newline();
      return false;
    }
    if (c == '\r' || c == '\n') {
      if (c == '\r') ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '\n') newline();
      return false;
    }
    at_line_start_ = false;
    if (width > indents_.back()) {
      indents_.push_back(width);
      push(TokenKind::Indent, "", line_, col());
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        push(TokenKind::Dedent, "", line_, col());
      }
      if (width != indents_.back()) throw ParseError(line_, col(), "inconsistent dedent");
    }
    return true;
  }

  void scan_token() {
    const char c = src_[pos_];
    if (c == ' ' || c == '\t' || c == '\f' || c == '\r') {
      ++pos_;
      return;
    }
    if (c == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      return;
    }
    if (c == '\\' && pos_ + 1 < src_.size() &&
        (src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '\r')) {
      ++pos_;
      if (src_[pos_] == '\r') ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '\n') {
        newline();
        at_line_start_ = false;
      }
      return;
    }
    if (c == '\n') {
      if (depth_ == 0) push(TokenKind::Newline, "", line_, col());
      newline();
      return;
    }
    if (is_name_start(c)) return scan_name();
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      return scan_number();
    }
    if (c == '"' || c == '\'') return scan_string();
    scan_operator();
  }

  void scan_name() {
    const int column = col();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    std::string text(src_.substr(start, pos_ - start));
    if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
      throw ParseError(line_, column, "unsupported string prefix '" + text + "'");
    }
    const TokenKind kind = keywords().count(text) ? TokenKind::Keyword : TokenKind::Name;
    push(kind, std::move(text), line_, column);
  }

  void scan_number() {
    const int column = col();
    const std::size_t start = pos_;
    bool real = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      real = true;
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        real = true;
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    if (pos_ < src_.size() && is_name_char(src_[pos_])) {
      throw ParseError(line_, column, "malformed number literal");
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    Token t;
    t.line = line_;
    t.column = column;
    t.text = std::string(text);
    if (real) {
      t.kind = TokenKind::Real;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t.real_value);
      if (ec != std::errc()) throw ParseError(line_, column, "invalid real literal");
    } else {
      t.kind = TokenKind::Int;
      if (text.size() > 1 && text[0] == '0') {
        throw ParseError(line_, column, "leading zeros in integer literal");
      }
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
      if (ec != std::errc()) throw ParseError(line_, column, "integer literal out of range");
    }
    tokens_.push_back(std::move(t));
  }

  void scan_string() {
    const int column = col();
    const char quote = src_[pos_];
    if (src_.substr(pos_, 3) == std::string(3, quote)) {
      throw ParseError(line_, column, "triple-quoted strings are not supported");
    }
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError(line_, column, "unterminated string literal");
      }
      const char c = src_[pos_++];
      if (c == quote) break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= src_.size()) throw ParseError(line_, column, "unterminated string literal");
      const char e = src_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '0': out.push_back('\0'); break;
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        default:
          out.push_back('\\');
          out.push_back(e);
      }
    }
    push(TokenKind::String, std::move(out), line_, column);
  }

  void scan_operator() {
    static constexpr std::string_view kTwo[] = {"**", "//", "==", "!=", "<=", ">=", "->",
                                                "+=", "-=", "*=", "/="};
    const int column = col();
    for (auto op : kTwo) {
      if (src_.substr(pos_, 2) == op) {
        pos_ += 2;
        push(TokenKind::Op, std::string(op), line_, column);
        return;
      }
    }
    const char c = src_[pos_];
    static constexpr std::string_view kOne = "+-*/%<>=(),:.[]{};@&|^~";
    if (kOne.find(c) == std::string_view::npos) {
      throw ParseError(line_, column, std::string("unexpected character '") + c + "'");
    }
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
    ++pos_;
    push(TokenKind::Op, std::string(1, c), line_, column);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_begin_ = 0;
  int line_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace suitegen::minipy::detail
