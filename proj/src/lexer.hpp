#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ncann/errors.hpp"

namespace ncann::detail {

struct Token {
  enum class Kind { ident, number, sym, end };
  Kind kind = Kind::end;
  std::string text;
  long long value = 0;  // for numbers
  int line = 0, col = 0;
};

/// Tokenizer shared by the presentation DSL and the element expression
/// grammar. `#` starts a comment running to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view src) { tokenize(src); }

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }

  bool accept_sym(std::string_view s) {
    if (peek().kind == Token::Kind::sym && peek().text == s) {
      next();
      return true;
    }
    return false;
  }
  bool accept_ident(std::string_view s) {
    if (peek().kind == Token::Kind::ident && peek().text == s) {
      next();
      return true;
    }
    return false;
  }

  Token expect_sym(std::string_view s) {
    if (peek().kind != Token::Kind::sym || peek().text != s) error("expected '" + std::string(s) + "'");
    return next();
  }
  Token expect_ident() {
    if (peek().kind != Token::Kind::ident) error("expected identifier");
    return next();
  }
  Token expect_number() {
    if (peek().kind != Token::Kind::number) error("expected number");
    return next();
  }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    fail(ErrorKind::parse, "parse error at line " + std::to_string(t.line) + ", col " +
                               std::to_string(t.col) + ": " + msg);
  }

 private:
  void tokenize(std::string_view src) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n; ++k) {
        if (src[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == '#') {
        while (i < src.size() && src[i] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.col = col;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        t.kind = Token::Kind::number;
        t.text = std::string(src.substr(i, j - i));
        if (t.text.size() > 9) fail(ErrorKind::parse, "number too large at line " + std::to_string(line));
        t.value = std::stoll(t.text);
        advance(j - i);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
          ++j;
        t.kind = Token::Kind::ident;
        t.text = std::string(src.substr(i, j - i));
        advance(j - i);
      } else {
        t.kind = Token::Kind::sym;
        auto two = src.substr(i, 2);
        if (two == "->" || two == ">=" || two == "<=" || two == "==" || two == "!=" ||
            two == "..") {
          t.text = std::string(two);
          advance(2);
        } else {
          t.text = std::string(1, c);
          advance(1);
        }
      }
      toks_.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::end;
    end.line = line;
    end.col = col;
    toks_.push_back(end);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace ncann::detail
