#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "logfit/error.hpp"
#include "logfit/polynomial.hpp"

namespace logfit {

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' integer)?
// atom   := integer | identifier | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const RingPtr& ring, std::size_t line, std::size_t column)
      : text_(text), ring_(ring), line_(line), column_(column) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line_, column_ + pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a non-negative integer literal");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ - start > 6) fail("exponent too large");
      base = base.pow(std::stoul(std::string(text_.substr(start, pos_ - start))));
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '^') fail("chained '^' needs parentheses");
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational value(Integer(std::string(text_.substr(start, pos_ - start))));
      // n/d directly adjacent is a rational literal, as printed for non-integer coefficients.
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        std::size_t dstart = ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        Integer den(std::string(text_.substr(dstart, pos_ - dstart)));
        if (den == 0) {
          pos_ = dstart;
          fail("zero denominator");
        }
        value = Rational(value.get_num(), den);
        value.canonicalize();
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression over `ring`. `line` and
/// `column` locate text[0] for error reporting.
inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line = 1,
                                   std::size_t column = 1) {
  return detail::ExpressionParser(text, ring, line, column).parse();
}

}  // namespace logfit
