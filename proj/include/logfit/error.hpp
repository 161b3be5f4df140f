#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logfit {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live in different polynomial rings.
class ambient_mismatch : public error {
 public:
  using error::error;
};

/// A variable name that is not part of the ring or chart.
class unknown_variable : public error {
 public:
  explicit unknown_variable(const std::string& name)
      : error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Input outside an operation's domain (zero ideal, bad index, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Raised when a logarithmic pullback needs a division that is not exact,
/// i.e. the map does not satisfy Phi^{-1}(F)_red in E.
class not_a_morphism_of_pairs : public error {
 public:
  explicit not_a_morphism_of_pairs(const std::string& what)
      : error("not a morphism of pairs: " + what) {}
};

/// Text input error with a 1-based position.
class parse_error : public error {
 public:
  parse_error(const std::string& message, std::size_t line, std::size_t column)
      : error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace logfit
