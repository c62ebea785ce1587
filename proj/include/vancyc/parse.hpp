#ifndef VANCYC_PARSE_HPP
#define VANCYC_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "vancyc/mpoly.hpp"

namespace vancyc {

// Recursive-descent parser for the expression grammar shared with the CLI:
// integers, rationals p/q, declared variable names, + - * ^ and parentheses.
// Implicit multiplication is rejected; '^' takes nonnegative integer
// exponents. Errors carry the byte offset.
class ExprParser {
 public:
  ExprParser(std::string text, std::vector<std::string> vars)
      : text_(std::move(text)), vars_(std::move(vars)) {}

  MPoly parse() {
    pos_ = 0;
    MPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError,
                what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) { ++pos_; return true; }
    return false;
  }

  MPoly parse_expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    MPoly acc = parse_term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc += parse_term();
      else if (accept('-')) acc -= parse_term();
      else break;
    }
    return acc;
  }

  MPoly parse_term() {
    MPoly acc = parse_power();
    while (accept('*')) acc = acc * parse_power();
    return acc;
  }

  MPoly parse_power() {
    MPoly base = parse_atom();
    if (accept('^')) {
      unsigned long e = parse_nat();
      if (e > 1u << 20) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MPoly parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MPoly p = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
    fail(c == '\0' ? "unexpected end of input"
                   : std::string("unexpected character '") + c + "'");
  }

  unsigned long parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    unsigned long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (v > 100000000ul) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  MPoly parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string num = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (dstart == pos_) fail("expected denominator");
      std::string den = text_.substr(dstart, pos_ - dstart);
      if (den == "0") fail("zero denominator");
      return MPoly::constant(vars_, Rational::parse(num + "/" + den));
    }
    return MPoly::constant(vars_, Rational::parse(num));
  }

  MPoly parse_variable() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return MPoly::variable(vars_, i);
    pos_ = start;
    throw Error(ErrorCode::UnknownVariable,
                "unknown variable '" + name + "' at offset " + std::to_string(start));
  }

  std::string text_;
  std::vector<std::string> vars_;
  size_t pos_ = 0;
};

inline MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& vars) {
  return ExprParser(text, vars).parse();
}

}  // namespace vancyc

#endif  // VANCYC_PARSE_HPP
