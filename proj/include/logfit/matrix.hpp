#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

#include "logfit/polynomial.hpp"

namespace logfit {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

namespace detail {

inline Polynomial exact_quotient(const Polynomial& num, const Polynomial& den) {
  auto q = num.divide_exact(den);
  if (!q) throw error("internal: fraction-free elimination produced an inexact division");
  return *std::move(q);
}

// One Bareiss update of rows/cols below pivot k.
inline void bareiss_step(PolyMatrix& m, std::size_t k, const Polynomial& prev) {
  const std::size_t rows = m.size(), cols = m.front().size();
  for (std::size_t i = k + 1; i < rows; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
      m[i][j] = prev.is_constant() && prev.constant_term() == 1 ? std::move(num) : exact_quotient(num, prev);
    }
    m[i][k] = Polynomial(m[i][k].ring());
  }
}

}  // namespace detail

/// Determinant of a square polynomial matrix by fraction-free elimination.
inline Polynomial determinant(PolyMatrix m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  bool negate = false;
  Polynomial prev = Polynomial::constant(ring, 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return Polynomial(ring);
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    detail::bareiss_step(m, k, prev);
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Rank over the fraction field. Pivot: lowest total degree, then smallest
/// (row, column).
inline std::size_t symbolic_rank(PolyMatrix m) {
  if (m.empty() || m.front().empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  const RingPtr ring = m.front().front().ring();
  Polynomial prev = Polynomial::constant(ring, 1);
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    bool found = false;
    std::tuple<long, std::size_t, std::size_t> best{};
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (m[i][j].is_zero()) continue;
        std::tuple<long, std::size_t, std::size_t> key{m[i][j].total_degree(), i, j};
        if (!found || key < best) best = key;
        found = true;
      }
    if (!found) break;
    auto [deg, pi, pj] = best;
    (void)deg;
    std::swap(m[pi], m[k]);
    for (auto& row : m) std::swap(row[pj], row[k]);
    detail::bareiss_step(m, k, prev);
    prev = m[k][k];
  }
  return k;
}

inline std::vector<std::vector<Rational>> evaluate(const PolyMatrix& m, std::span<const Rational> point) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(e.evaluate(point));
    out.push_back(std::move(r));
  }
  return out;
}

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Determinant of the submatrix on the given rows and columns.
inline Polynomial minor(const PolyMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                        const RingPtr& ring) {
  PolyMatrix sub;
  for (auto r : rows) {
    std::vector<Polynomial> row;
    for (auto c : cols) row.push_back(m[r][c]);
    sub.push_back(std::move(row));
  }
  return determinant(std::move(sub), ring);
}

/// Every k x k minor (row subsets outer, column subsets inner).
inline std::vector<Polynomial> all_minors(const PolyMatrix& m, std::size_t k, const RingPtr& ring) {
  std::vector<Polynomial> out;
  if (m.empty()) return out;
  for (const auto& rs : subsets(m.size(), k))
    for (const auto& cs : subsets(m.front().size(), k)) out.push_back(minor(m, rs, cs, ring));
  return out;
}

}  // namespace logfit
