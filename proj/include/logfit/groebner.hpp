#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "logfit/monomial.hpp"
#include "logfit/polynomial.hpp"

namespace logfit {

/// Polynomial with terms sorted by decreasing `order`; the working
/// representation of the Groebner engine.
struct OrderedPoly {
  std::vector<Term> terms;
  unsigned long sugar = 0;

  bool is_zero() const noexcept { return terms.empty(); }
  const Monomial& lm() const { return terms.front().mono; }
  const Rational& lc() const { return terms.front().coeff; }
};

namespace gb {

inline OrderedPoly to_ordered(const Polynomial& p, const MonomialOrder& order) {
  OrderedPoly r;
  r.terms = p.terms();
  std::sort(r.terms.begin(), r.terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
  r.sugar = p.is_zero() ? 0 : static_cast<unsigned long>(p.total_degree());
  return r;
}

inline Polynomial from_ordered(const RingPtr& ring, const OrderedPoly& p) { return Polynomial(ring, p.terms); }

inline void make_monic(OrderedPoly& p) {
  if (p.is_zero() || p.lc() == 1) return;
  Rational inv = 1 / p.lc();
  for (auto& t : p.terms) t.coeff *= inv;
}

/// f <- f - c * m * g, all sorted by `order`.
inline void sub_mul(OrderedPoly& f, const Rational& c, const Monomial& m, const OrderedPoly& g,
                    const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(f.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.push_back(std::move(f.terms[i++]));
      continue;
    }
    Monomial gm = g.terms[j].mono * m;
    int cmp = i == f.terms.size() ? -1 : order.compare(f.terms[i].mono, gm);
    if (cmp > 0) {
      out.push_back(std::move(f.terms[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -c * g.terms[j].coeff});
      ++j;
    } else {
      Rational v = f.terms[i].coeff - c * g.terms[j].coeff;
      if (v != 0) out.push_back({std::move(gm), std::move(v)});
      ++i;
      ++j;
    }
  }
  f.terms = std::move(out);
  f.sugar = std::max(f.sugar, g.sugar + m.degree());
}

/// Picks which of several reducers to use; receives candidate indices.
using ReducerChoice = std::function<std::size_t(const std::vector<std::size_t>&)>;

/// Full normal form of f modulo `basis` (indices `active`, or all when empty).
inline OrderedPoly normal_form(OrderedPoly f, const std::vector<OrderedPoly>& basis, const MonomialOrder& order,
                               const std::vector<std::size_t>* active = nullptr,
                               const ReducerChoice& choose = {}) {
  std::vector<std::size_t> all;
  if (!active) {
    all.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) all[i] = i;
    active = &all;
  }
  OrderedPoly rem;
  rem.sugar = f.sugar;
  std::vector<std::size_t> candidates;
  while (!f.is_zero()) {
    const Term& lt = f.terms.front();
    candidates.clear();
    for (auto k : *active) {
      if (basis[k].is_zero() || !basis[k].lm().divides(lt.mono)) continue;
      candidates.push_back(k);
      if (!choose) break;
    }
    if (candidates.empty()) {
      rem.terms.push_back(std::move(f.terms.front()));
      f.terms.erase(f.terms.begin());
      continue;
    }
    const auto& g = basis[choose ? choose(candidates) : candidates.front()];
    Monomial m = lt.mono / g.lm();
    Rational c = lt.coeff / g.lc();
    sub_mul(f, c, m, g, order);
    rem.sugar = std::max(rem.sugar, f.sugar);
  }
  return rem;
}

/// Clears denominators and divides out the content, leaving a positive
/// leading coefficient. Used to keep the engine's coefficients integral.
inline void make_primitive(OrderedPoly& p) {
  if (p.is_zero()) return;
  mpz_class den = 1;
  for (const auto& t : p.terms)
    if (t.coeff.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  mpz_class g = 0;
  for (auto& t : p.terms) {
    if (den != 1) {
      mpz_divexact(t.coeff.get_den_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      t.coeff.get_num() *= t.coeff.get_den();
      t.coeff.get_den() = 1;
    }
    if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  if (p.lc() < 0) g = -g;
  if (g == 1) return;
  for (auto& t : p.terms) mpz_divexact(t.coeff.get_num_mpz_t(), t.coeff.get_num_mpz_t(), g.get_mpz_t());
}

/// Integral f[pos:] <- f[pos:] - b * m * g; f and g have integer coefficients.
inline void sub_mul_integral(OrderedPoly& f, std::size_t pos, const mpz_class& b, const Monomial& m,
                             const OrderedPoly& g, const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(f.terms.size() + g.terms.size());
  for (std::size_t i = 0; i < pos; ++i) out.push_back(std::move(f.terms[i]));
  std::size_t i = pos, j = 0;
  mpz_class v;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.push_back(std::move(f.terms[i++]));
      continue;
    }
    Monomial gm = g.terms[j].mono * m;
    int cmp = i == f.terms.size() ? -1 : order.compare(f.terms[i].mono, gm);
    if (cmp > 0) {
      out.push_back(std::move(f.terms[i++]));
    } else if (cmp < 0) {
      v = b * g.terms[j].coeff.get_num();
      out.push_back({std::move(gm), Rational(-v)});
      ++j;
    } else {
      v = f.terms[i].coeff.get_num() - b * g.terms[j].coeff.get_num();
      if (v != 0) out.push_back({std::move(gm), Rational(v)});
      ++i;
      ++j;
    }
  }
  f.terms = std::move(out);
  f.sugar = std::max(f.sugar, g.sugar + m.degree());
}

/// Fraction-free reduction of the terms of f from index `pos` on, by the
/// primitive integral polynomials basis[k], k in `reducers`. With `full`
/// false only the leading term is reduced. The result is primitive.
inline void reduce_integral(OrderedPoly& f, std::size_t pos, const std::vector<OrderedPoly>& basis,
                            const std::vector<std::size_t>& reducers, const MonomialOrder& order, bool full) {
  make_primitive(f);
  unsigned steps = 0;
  mpz_class d, a, b;
  while (pos < f.terms.size()) {
    const Term& t = f.terms[pos];
    const OrderedPoly* best = nullptr;
    for (auto k : reducers) {
      const auto& g = basis[k];
      if (!g.is_zero() && g.lm().divides(t.mono) && (!best || g.terms.size() < best->terms.size())) best = &g;
    }
    if (!best) {
      if (!full) break;
      ++pos;
      continue;
    }
    mpz_gcd(d.get_mpz_t(), t.coeff.get_num_mpz_t(), best->lc().get_num_mpz_t());
    mpz_divexact(a.get_mpz_t(), best->lc().get_num_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), t.coeff.get_num_mpz_t(), d.get_mpz_t());
    Monomial m = t.mono / best->lm();
    if (a != 1)
      for (auto& s : f.terms) s.coeff.get_num() *= a;
    sub_mul_integral(f, pos, b, m, *best, order);
    if (++steps % 8 == 0) make_primitive(f);
  }
  make_primitive(f);
}

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
  unsigned long sugar;
};

/// Reduced Groebner basis by Buchberger's algorithm with sugar selection,
/// the coprime criterion, and the Gebauer-Moeller chain criterion.
/// Internally coefficients stay integral (fraction-free reduction, content
/// removed) and the active basis is kept inter-reduced.
/// Result is monic and sorted by decreasing leading monomial.
inline std::vector<OrderedPoly> buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  std::vector<OrderedPoly> polys;
  std::vector<std::size_t> active;
  std::vector<CriticalPair> pairs;

  auto spair_sugar = [&](std::size_t i, std::size_t j, const Monomial& l) {
    return std::max(polys[i].sugar + (l.degree() - polys[i].lm().degree()),
                    polys[j].sugar + (l.degree() - polys[j].lm().degree()));
  };

  auto insert = [&](OrderedPoly h) {
    std::size_t k = polys.size();
    polys.push_back(std::move(h));
    const Monomial& hm = polys[k].lm();

    std::vector<CriticalPair> fresh;
    for (auto g : active) {
      Monomial l = lcm(polys[g].lm(), hm);
      fresh.push_back({g, k, l, spair_sugar(g, k, l)});
    }
    // Chain criterion among new pairs; coprime pairs survive this filter so
    // they can still mask others, then are dropped.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool coprime_pair = coprime(polys[fresh[a].i].lm(), hm);
      bool masked = false;
      if (!coprime_pair) {
        for (std::size_t b = 0; b < fresh.size() && !masked; ++b) {
          if (b == a) continue;
          if (fresh[b].lcm.divides(fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) masked = true;
        }
        for (const auto& d : kept)
          if (!masked && d.lcm.divides(fresh[a].lcm)) masked = true;
      }
      if (!masked) kept.push_back(fresh[a]);
    }
    std::erase_if(kept, [&](const CriticalPair& p) { return coprime(polys[p.i].lm(), hm); });

    std::erase_if(pairs, [&](const CriticalPair& p) {
      return hm.divides(p.lcm) && lcm(polys[p.i].lm(), hm) != p.lcm && lcm(polys[p.j].lm(), hm) != p.lcm;
    });
    pairs.insert(pairs.end(), kept.begin(), kept.end());

    std::erase_if(active, [&](std::size_t g) { return hm.divides(polys[g].lm()); });
    active.push_back(k);
    // keep the tails of the active basis reduced; leading terms are unchanged
    for (auto g : active) {
      if (g == k) continue;
      std::vector<std::size_t> others;
      for (auto o : active)
        if (o != g) others.push_back(o);
      reduce_integral(polys[g], 1, polys, others, order, true);
    }
  };

  // Seed with inter-reduced generators in increasing leading-monomial order.
  std::vector<OrderedPoly> input;
  for (const auto& g : gens)
    if (!g.is_zero()) input.push_back(to_ordered(g, order));
  std::sort(input.begin(), input.end(),
            [&](const OrderedPoly& a, const OrderedPoly& b) { return order.greater(b.lm(), a.lm()); });
  for (auto& f : input) {
    reduce_integral(f, 0, polys, active, order, false);
    if (!f.is_zero()) insert(std::move(f));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const CriticalPair& a, const CriticalPair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    CriticalPair p = *best;
    pairs.erase(best);

    const auto& f = polys[p.i];
    const auto& g = polys[p.j];
    mpz_class d, a, b;
    mpz_gcd(d.get_mpz_t(), f.lc().get_num_mpz_t(), g.lc().get_num_mpz_t());
    mpz_divexact(a.get_mpz_t(), g.lc().get_num_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), f.lc().get_num_mpz_t(), d.get_mpz_t());
    OrderedPoly s;
    s.terms = f.terms;
    {
      Monomial mf = p.lcm / f.lm();
      for (auto& t : s.terms) {
        t.mono = t.mono * mf;
        t.coeff.get_num() *= a;
      }
    }
    s.sugar = p.sugar;
    sub_mul_integral(s, 0, b, p.lcm / g.lm(), g, order);
    reduce_integral(s, 0, polys, active, order, true);
    if (!s.is_zero()) insert(std::move(s));
  }

  // Inter-reduce the minimal basis, smallest leading monomial first: a tail
  // term can only be divisible by smaller leading monomials.
  std::vector<OrderedPoly> basis;
  for (auto k : active) basis.push_back(std::move(polys[k]));
  std::sort(basis.begin(), basis.end(),
            [&](const OrderedPoly& a, const OrderedPoly& b) { return order.greater(b.lm(), a.lm()); });
  std::vector<std::size_t> below;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    reduce_integral(basis[i], 1, basis, below, order, true);
    below.push_back(i);
  }
  for (auto& b : basis) make_monic(b);
  std::reverse(basis.begin(), basis.end());
  return basis;
}

}  // namespace gb
}  // namespace logfit
