#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logfit {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// as long as every value is canonicalized after construction from parts.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Copy with numerator and denominator reduced; values built from raw
/// parts (mpq_class(n, d)) are not reduced by GMP.
inline Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "-3", "7/2", "+4". Returns nullopt on malformed text or zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto to_z = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) return std::nullopt;
    return Rational(to_z(text));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_int(num) || den.empty() || den.front() == '-' || den.front() == '+' || !is_int(den))
    return std::nullopt;
  Integer d = to_z(den);
  if (d == 0) return std::nullopt;
  Rational r(to_z(num), d);
  r.canonicalize();
  return r;
}

/// Rank of a dense rational matrix by Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace logfit
