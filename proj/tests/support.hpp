#pragma once

// Shared generators and independent oracles for the test binaries.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "logfit/logfit.hpp"
#include "logfit/problem.hpp"

namespace logfit {
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
}  // namespace logfit

namespace testing_support {

using namespace logfit;

inline Polynomial P(const RingPtr& ring, const std::string& text) { return parse_polynomial(text, ring); }

inline std::string data_file(const std::string& name) { return std::string(LOGFIT_DATA_DIR) + "/" + name; }

struct Gen {
  std::mt19937 rng;

  explicit Gen(unsigned seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  Monomial monomial(std::size_t nvars, unsigned max_degree) {
    Monomial m(nvars);
    unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
    for (unsigned b = 0; b < budget; ++b) m[static_cast<std::size_t>(integer(0, static_cast<int>(nvars) - 1))] += 1;
    return m;
  }

  Polynomial polynomial(const RingPtr& ring, unsigned max_degree, std::size_t max_terms, int coeff_bound = 5) {
    std::vector<Term> terms;
    auto count = static_cast<std::size_t>(integer(1, static_cast<int>(max_terms)));
    for (std::size_t t = 0; t < count; ++t) {
      int c = 0;
      while (c == 0) c = integer(-coeff_bound, coeff_bound);
      terms.push_back({monomial(ring->size(), max_degree), Rational(c)});
    }
    return Polynomial(ring, std::move(terms));
  }

  // Monomial supported on the given variables, every listed exponent in [lo, hi].
  Monomial support_monomial(std::size_t nvars, const std::vector<std::size_t>& vars, unsigned lo, unsigned hi) {
    Monomial m(nvars);
    for (auto v : vars) m[v] = static_cast<Exponent>(integer(static_cast<int>(lo), static_cast<int>(hi)));
    return m;
  }

  RationalPoint point(std::size_t n, int bound) {
    RationalPoint p;
    for (std::size_t i = 0; i < n; ++i) p.coords.emplace_back(integer(-bound, bound));
    return p;
  }
};

// Dense Gaussian elimination over Q, independent of the library's helper.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, degree);
  return out;
}

/// f in (gens) with cofactors of degree <= D - deg(g_i): solves the linear
/// system on coefficients directly.
inline bool linear_membership(const Polynomial& f, const std::vector<Polynomial>& gens, unsigned D) {
  const auto ring = f.ring();
  if (f.is_zero()) return true;
  auto rows = monomials_up_to(ring->size(), D);
  std::map<std::vector<Exponent>, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i].to_vector()] = i;
  std::vector<std::vector<Rational>> columns;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() > static_cast<long>(D)) continue;
    for (const auto& q : monomials_up_to(ring->size(), D - static_cast<unsigned>(g.total_degree()))) {
      std::vector<Rational> col(rows.size());
      for (const auto& t : g.terms()) col[row_of.at((t.mono * q).to_vector())] += t.coeff;
      columns.push_back(std::move(col));
    }
  }
  std::vector<Rational> target(rows.size());
  for (const auto& t : f.terms()) {
    auto it = row_of.find(t.mono.to_vector());
    if (it == row_of.end()) return false;
    target[it->second] = t.coeff;
  }
  auto transpose = [&](const std::vector<std::vector<Rational>>& cols) {
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows.size(); ++r) m[r][c] = cols[c][r];
    return m;
  };
  auto base = dense_rank(transpose(columns));
  columns.push_back(target);
  return dense_rank(transpose(columns)) == base;
}

/// Laplace expansion along the first row.
inline Polynomial laplace_determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (n == 1) return m[0][0];
  Polynomial acc(ring);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Polynomial>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * laplace_determinant(sub, ring);
    if (c % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

/// Largest r with a nonzero r x r minor (Laplace oracle).
inline std::size_t minor_rank(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  if (m.empty()) return 0;
  for (std::size_t r = std::min(m.size(), m.front().size()); r > 0; --r)
    for (const auto& rs : subsets(m.size(), r))
      for (const auto& cs : subsets(m.front().size(), r)) {
        std::vector<std::vector<Polynomial>> sub;
        for (auto i : rs) {
          std::vector<Polynomial> row;
          for (auto j : cs) row.push_back(m[i][j]);
          sub.push_back(std::move(row));
        }
        if (!laplace_determinant(sub, ring).is_zero()) return r;
      }
  return 0;
}

inline MorphismOfPairs morphism(const ChartedPair& src, const ChartedPair& tgt, const std::vector<std::string>& comps) {
  std::vector<Polynomial> c;
  for (const auto& s : comps) c.push_back(P(src.ring(), s));
  return MorphismOfPairs(src, tgt, c);
}

inline MorphismOfPairs example1() {
  return morphism(ChartedPair({"u1", "u2", "v1"}, {"u1", "u2"}), ChartedPair({"x1", "y1"}, {"x1"}),
                  {"(u1*u2)^2", "u1*u2 + u1^3*u2^3*v1"});
}

inline MorphismOfPairs example2() {
  return morphism(ChartedPair({"u1", "u2", "v1"}, {"u1", "u2"}), ChartedPair({"x1", "y1"}, {"x1"}),
                  {"(u1*u2)^2", "u1*u2 + u1^2*u2^3"});
}

inline MorphismOfPairs example3() {
  return morphism(ChartedPair({"u1", "u2", "u3"}, {"u1", "u2", "u3"}), ChartedPair({"x1", "x2"}, {"x1", "x2"}),
                  {"u1*u2^2", "u2^3*u3^4"});
}

/// Random monomial morphism onto a surface with chart (u1, u2, v), divisor
/// {u1, u2}: x divisorial with full support, y either divisorial or free.
inline MorphismOfPairs random_monomial_morphism(Gen& g, unsigned max_exp) {
  ChartedPair src({"u1", "u2", "v"}, {"u1", "u2"});
  bool y_divisorial = g.coin();
  ChartedPair tgt = y_divisorial ? ChartedPair({"x", "y"}, {"x", "y"}) : ChartedPair({"x", "y"}, {"x"});
  auto x = g.support_monomial(3, {0, 1}, 1, max_exp);
  Monomial y(3);
  if (y_divisorial) {
    y = g.support_monomial(3, {0, 1}, 0, max_exp);
  } else {
    y = g.support_monomial(3, {0, 1}, 0, max_exp);
    y[2] = static_cast<Exponent>(g.integer(0, 1));
  }
  int cx = 0, cy = 0;
  while (cx == 0) cx = g.integer(-3, 3);
  while (cy == 0) cy = g.integer(-3, 3);
  return MorphismOfPairs(src, tgt,
                         {Polynomial::monomial(src.ring(), x, cx), Polynomial::monomial(src.ring(), y, cy)});
}

struct NormalForm {
  MorphismOfPairs phi;
  RationalPoint point;
  int case_tag;
};

/// Random morphism written literally in one of the three strongly prepared
/// shapes at `point`. The free coordinate is shifted so the point is not
/// always the origin.
inline NormalForm random_normal_form(Gen& g) {
  const int tag = g.integer(1, 3);
  const bool k_one = tag == 1 && g.coin(0.3);
  ChartedPair src = k_one ? ChartedPair({"u1", "v", "w"}, {"u1"}) : ChartedPair({"u1", "u2", "v"}, {"u1", "u2"});
  const auto& r = src.ring();
  const std::size_t v_index = k_one ? 1 : 2;
  const int c = g.integer(-2, 2);
  Polynomial v = Polynomial::variable(r, v_index) - Polynomial::constant(r, c);
  auto stratum = src.divisor_vars();
  RationalPoint a;
  a.coords.assign(3, Rational(0));
  a.coords[v_index] = c;
  if (k_one) a.coords[2] = g.integer(-2, 2);

  if (tag == 3) {
    ChartedPair tgt({"x1", "x2"}, {"x1", "x2"});
    Monomial p(3), q(3);
    p[0] = static_cast<Exponent>(g.integer(1, 4));
    q[1] = static_cast<Exponent>(g.integer(1, 4));
    auto x1 = Polynomial::monomial(r, p, g.integer(1, 3));
    auto x2 = Polynomial::monomial(r, q, g.integer(1, 3));
    if (g.coin()) std::swap(x1, x2);
    return {MorphismOfPairs(src, tgt, {x1, x2}), a, 3};
  }

  std::vector<Exponent> alpha;
  for (std::size_t i = 0; i < stratum.size(); ++i) alpha.push_back(static_cast<Exponent>(g.integer(1, 3)));
  Exponent gg = 0;
  for (auto e : alpha) gg = std::gcd(gg, e);
  for (auto& e : alpha) e /= gg;
  Monomial ua(3);
  for (std::size_t i = 0; i < stratum.size(); ++i) ua[stratum[i]] = alpha[i];
  const auto m = static_cast<Exponent>(g.integer(1, 3));
  auto power = [](Monomial b, Exponent e) {
    Monomial out(b.size());
    for (Exponent i = 0; i < e; ++i) out = out * b;
    return out;
  };
  Polynomial x1 = Polynomial::monomial(r, power(ua, m), 1);

  std::vector<Exponent> beta;
  Monomial ub(3);
  do {
    beta.clear();
    for (std::size_t i = 0; i < stratum.size(); ++i) beta.push_back(static_cast<Exponent>(g.integer(0, 4)));
  } while (tag == 2 && static_cast<long long>(alpha[0]) * beta[1] == static_cast<long long>(alpha[1]) * beta[0]);
  for (std::size_t i = 0; i < stratum.size(); ++i) ub[stratum[i]] = beta[i];

  const bool z_divisorial = tag == 2 && g.coin(0.3);
  Polynomial series(r);
  if (!z_divisorial)
    for (unsigned d = 0; d <= 3; ++d)
      if (g.coin(0.5)) series += Polynomial::monomial(r, power(ua, d), g.integer(-3, 3));
  Polynomial z = series + Polynomial::monomial(r, ub, g.integer(1, 3)) * (tag == 1 ? v : Polynomial::constant(r, 1));
  ChartedPair tgt = z_divisorial ? ChartedPair({"x1", "x2"}, {"x1", "x2"}) : ChartedPair({"x1", "y1"}, {"x1"});
  std::vector<Polynomial> comps{x1, z};
  if (g.coin(0.3)) {
    std::swap(comps[0], comps[1]);
    tgt = z_divisorial ? ChartedPair({"x2", "x1"}, {"x2", "x1"}) : ChartedPair({"y1", "x1"}, {"x1"});
  }
  return {MorphismOfPairs(src, tgt, comps), a, tag};
}

}  // namespace testing_support
