#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logfit/groebner.hpp"
#include "logfit/polynomial.hpp"

namespace logfit {

/// A reduced Groebner basis together with the order it was computed for.
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<OrderedPoly> elements;

  bool is_unit() const { return elements.size() == 1 && elements.front().lm().is_one(); }
  bool is_zero() const { return elements.empty(); }
};

/// Ideal given by generators in a fixed ring. Copies share one basis cache,
/// which is filled at most once per order under a mutex.
class IdealPresentation {
 public:
  explicit IdealPresentation(RingPtr ring) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {}

  IdealPresentation(RingPtr ring, const std::vector<Polynomial>& gens) : IdealPresentation(std::move(ring)) {
    for (const auto& g : gens) {
      if (!same_ring(g.ring(), ring_)) throw ambient_mismatch("generator outside the ideal's ring");
      if (!g.is_zero()) gens_.push_back(g);
    }
  }

  static IdealPresentation unit(RingPtr ring) {
    auto one = Polynomial::constant(ring, 1);
    return IdealPresentation(std::move(ring), {one});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const& noexcept { return gens_; }
  std::vector<Polynomial> generators() && { return std::move(gens_); }
  bool is_zero_ideal() const noexcept { return gens_.empty(); }

  const GroebnerBasis& basis(const MonomialOrder& order) const {
    std::lock_guard lock(cache_->mutex);
    for (const auto& b : cache_->bases)
      if (b->order == order) return *b;
    cache_->bases.push_back(std::make_unique<GroebnerBasis>(GroebnerBasis{order, gb::buchberger(gens_, order)}));
    return *cache_->bases.back();
  }

  const GroebnerBasis& basis() const { return basis(MonomialOrder::degrevlex(ring_->size())); }

  /// Reduced Groebner basis as a new presentation whose cache holds it.
  IdealPresentation groebner_basis(const MonomialOrder& order) const {
    const auto& b = basis(order);
    std::vector<Polynomial> gens;
    for (const auto& e : b.elements) gens.push_back(gb::from_ordered(ring_, e));
    IdealPresentation out(ring_, gens);
    out.cache_->bases.push_back(std::make_unique<GroebnerBasis>(b));
    return out;
  }

  IdealPresentation groebner_basis() const { return groebner_basis(MonomialOrder::degrevlex(ring_->size())); }

  Polynomial normal_form(const Polynomial& f) const {
    check(f);
    const auto& b = basis();
    return gb::from_ordered(ring_, gb::normal_form(gb::to_ordered(f, b.order), b.elements, b.order));
  }

  bool contains(const Polynomial& f) const {
    check(f);
    if (f.is_zero()) return true;
    const auto& b = basis();
    return gb::normal_form(gb::to_ordered(f, b.order), b.elements, b.order).is_zero();
  }

  bool contains(const IdealPresentation& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Polynomial& g) { return contains(g); });
  }

  bool is_unit() const { return !gens_.empty() && basis().is_unit(); }

  /// Reduced bases are unique, so equal ideals have identical bases.
  friend bool operator==(const IdealPresentation& a, const IdealPresentation& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    const auto& x = a.basis().elements;
    const auto& y = b.basis().elements;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].terms.size() != y[i].terms.size()) return false;
      for (std::size_t k = 0; k < x[i].terms.size(); ++k)
        if (x[i].terms[k].mono != y[i].terms[k].mono || x[i].terms[k].coeff != y[i].terms[k].coeff) return false;
    }
    return true;
  }

  IdealPresentation operator+(const IdealPresentation& other) const {
    if (!same_ring(ring_, other.ring_)) throw ambient_mismatch("ideal sum across rings");
    auto gens = gens_;
    gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
    return IdealPresentation(ring_, gens);
  }

  /// Generators re-expressed in a ring containing all of this ring's names.
  IdealPresentation embed(const RingPtr& target) const {
    std::vector<Polynomial> gens;
    for (const auto& g : gens_) gens.push_back(g.embed(target));
    return IdealPresentation(target, gens);
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ", ";
      s += gens_[i].to_string();
    }
    return gens_.empty() ? "(0)" : s + ")";
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<GroebnerBasis>> bases;
  };

  void check(const Polynomial& f) const {
    if (!same_ring(f.ring(), ring_)) throw ambient_mismatch("polynomial and ideal live in different rings");
  }

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

inline std::string fresh_name(const Ring& ring, const std::string& stem) {
  std::string name = stem;
  while (ring.find(name)) name += "_";
  return name;
}

/// Ring with one extra variable appended; returns (ring, index of the new variable).
inline std::pair<RingPtr, std::size_t> extend_ring(const RingPtr& ring, const std::string& stem) {
  auto names = ring->names();
  names.push_back(fresh_name(*ring, stem));
  return {make_ring(names), ring->size()};
}

}  // namespace detail

/// f in I.
inline bool ideal_membership(const Polynomial& f, const IdealPresentation& ideal) { return ideal.contains(f); }

/// f in rad(I), decided by 1 in I + (1 - t f) over a ring with a fresh t.
inline bool radical_membership(const Polynomial& f, const IdealPresentation& ideal) {
  if (!same_ring(f.ring(), ideal.ring())) throw ambient_mismatch("polynomial and ideal live in different rings");
  if (f.is_zero()) return true;
  auto [ext, t] = detail::extend_ring(ideal.ring(), "t");
  auto gens = ideal.embed(ext).generators();
  gens.push_back(Polynomial::constant(ext, 1) - Polynomial::variable(ext, t) * f.embed(ext));
  return IdealPresentation(ext, gens).is_unit();
}

/// rad(a) == rad(b), by mutual radical membership of generators.
inline bool radical_equal(const IdealPresentation& a, const IdealPresentation& b) {
  for (const auto& g : a.generators())
    if (!radical_membership(g, b)) return false;
  for (const auto& g : b.generators())
    if (!radical_membership(g, a)) return false;
  return true;
}

namespace detail {

// One block-order elimination: I ∩ Q[keep] in the subring of kept variables.
inline IdealPresentation eliminate_block(const IdealPresentation& ideal, const std::vector<bool>& kept) {
  const auto& ring = ideal.ring();
  std::vector<std::size_t> drop;
  std::vector<std::string> sub_names;
  std::vector<std::size_t> sub_index(ring->size(), 0);
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (kept[i]) {
      sub_index[i] = sub_names.size();
      sub_names.push_back(ring->name(i));
    } else {
      drop.push_back(i);
    }
  }
  auto sub = make_ring(sub_names);
  const auto& b = ideal.basis(MonomialOrder::elimination(ring->size(), drop));
  std::vector<Polynomial> gens;
  for (const auto& e : b.elements) {
    bool inside = true;
    for (const auto& t : e.terms)
      for (auto i : drop)
        if (t.mono[i] != 0) inside = false;
    if (!inside) continue;
    std::vector<Term> terms;
    for (const auto& t : e.terms) {
      Monomial m(sub_names.size());
      for (std::size_t i = 0; i < ring->size(); ++i)
        if (kept[i]) m[sub_index[i]] = t.mono[i];
      terms.push_back({std::move(m), t.coeff});
    }
    gens.emplace_back(sub, std::move(terms));
  }
  return IdealPresentation(sub, gens);
}

}  // namespace detail

/// I intersected with Q[keep], expressed in the subring of kept variables
/// (listed in ambient order).
///
/// The generators are homogenized with a fresh variable h first, the
/// homogeneous ideal is eliminated, and h is set back to 1. Every f in
/// I ∩ Q[keep] has some h^k f^h in the homogenized elimination ideal, so
/// nothing is lost; the homogeneous computation avoids the coefficient
/// swell an inhomogeneous block-order run can hit.
inline IdealPresentation elimination(const IdealPresentation& ideal, const std::vector<std::string>& keep) {
  const auto& ring = ideal.ring();
  std::vector<bool> kept(ring->size(), false);
  for (const auto& name : keep) kept[ring->index(name)] = true;
  auto [ext, h] = detail::extend_ring(ring, "h");
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    const auto d = static_cast<unsigned long>(g.total_degree());
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(ext->size());
      for (std::size_t i = 0; i < ring->size(); ++i) m[i] = t.mono[i];
      m[h] = static_cast<Exponent>(d - t.mono.degree());
      terms.push_back({std::move(m), t.coeff});
    }
    gens.emplace_back(ext, std::move(terms));
  }
  std::vector<bool> kept_h(kept);
  kept_h.push_back(true);
  auto homogeneous = detail::eliminate_block(IdealPresentation(ext, gens), kept_h);

  std::vector<std::string> sub_names;
  for (std::size_t i = 0; i < ring->size(); ++i)
    if (kept[i]) sub_names.push_back(ring->name(i));
  auto sub = make_ring(sub_names);
  std::vector<Polynomial> out;
  for (const auto& g : homogeneous.generators()) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(sub_names.size());
      for (std::size_t i = 0; i < sub_names.size(); ++i) m[i] = t.mono[i];
      terms.push_back({std::move(m), t.coeff});
    }
    out.emplace_back(sub, std::move(terms));
  }
  return IdealPresentation(sub, out);
}

/// Krull dimension of Q[x]/I: size of a largest set of variables containing
/// no leading monomial of a Groebner basis.
inline std::size_t dimension(const IdealPresentation& ideal) {
  const std::size_t n = ideal.ring()->size();
  if (ideal.is_zero_ideal()) return n;
  const auto& b = ideal.basis();
  if (b.is_unit()) throw domain_error("empty variety: the ideal is the unit ideal");
  if (n > 24) throw domain_error("dimension: too many variables for subset search");
  std::vector<unsigned long> supports;
  for (const auto& e : b.elements) {
    unsigned long mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e.lm()[i] > 0) mask |= 1ul << i;
    supports.push_back(mask);
  }
  std::size_t best = 0;
  for (unsigned long set = 0; set < (1ul << n); ++set) {
    auto size = static_cast<std::size_t>(__builtin_popcountl(set));
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](unsigned long s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

/// I intersected with J via t*I + (1-t)*J eliminating t.
inline IdealPresentation intersection(const IdealPresentation& a, const IdealPresentation& b) {
  if (!same_ring(a.ring(), b.ring())) throw ambient_mismatch("intersection across rings");
  auto [ext, t] = detail::extend_ring(a.ring(), "t");
  auto tv = Polynomial::variable(ext, t);
  auto one_minus_t = Polynomial::constant(ext, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(tv * g.embed(ext));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.embed(ext));
  auto elim = elimination(IdealPresentation(ext, gens), a.ring()->names());
  std::vector<Polynomial> out;
  for (const auto& g : elim.generators()) out.push_back(g.embed(a.ring()));
  return IdealPresentation(a.ring(), out);
}

/// Colon ideal (I : f) = (I intersect (f)) / f.
inline IdealPresentation quotient(const IdealPresentation& ideal, const Polynomial& f) {
  if (f.is_zero()) throw domain_error("quotient by the zero polynomial");
  auto inter = intersection(ideal, IdealPresentation(ideal.ring(), {f}));
  std::vector<Polynomial> gens;
  for (const auto& g : inter.generators()) {
    auto q = g.divide_exact(f);
    if (!q) throw error("internal: intersection element not divisible by f");
    gens.push_back(*q);
  }
  return IdealPresentation(ideal.ring(), gens);
}

/// (I : f^infinity) = (I + (1 - t f)) intersected with the original ring.
inline IdealPresentation saturation(const IdealPresentation& ideal, const Polynomial& f) {
  if (f.is_zero()) throw domain_error("saturation by the zero polynomial");
  auto [ext, t] = detail::extend_ring(ideal.ring(), "t");
  auto gens = ideal.embed(ext).generators();
  gens.push_back(Polynomial::constant(ext, 1) - Polynomial::variable(ext, t) * f.embed(ext));
  auto elim = elimination(IdealPresentation(ext, gens), ideal.ring()->names());
  std::vector<Polynomial> out;
  for (const auto& g : elim.generators()) out.push_back(g.embed(ideal.ring()));
  return IdealPresentation(ideal.ring(), out);
}

/// Evidence that an ideal is generated near a point by one divisor monomial.
struct PrincipalMonomialCertificate {
  Monomial generator_monomial;
  Polynomial residual_witness;  // element of (I : m), nonzero at the point
};

/// Maximal ideal (x_i - a_i) of a rational point.
inline IdealPresentation point_ideal(const RingPtr& ring, std::span<const Rational> point) {
  if (point.size() != ring->size()) throw domain_error("point dimension does not match ring");
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->size(); ++i)
    gens.push_back(Polynomial::variable(ring, i) - Polynomial::constant(ring, point[i]));
  return IdealPresentation(ring, gens);
}

/// Decides whether I is principal monomial in the local ring at `point`:
/// m = gcd of generator contents must live on divisor variables, and
/// (I : m) + m_point must contain 1.
inline std::optional<PrincipalMonomialCertificate> is_principal_monomial_at(
    const IdealPresentation& ideal, std::span<const Rational> point, const std::vector<std::size_t>& divisor_vars) {
  if (ideal.is_zero_ideal()) throw domain_error("principal-monomial test on the zero ideal");
  const auto& ring = ideal.ring();
  if (point.size() != ring->size()) throw domain_error("point dimension does not match ring");

  Monomial m = ideal.generators().front().monomial_content();
  for (const auto& g : ideal.generators()) m = gcd(m, g.monomial_content());
  std::vector<bool> on_divisor(ring->size(), false);
  for (auto i : divisor_vars) on_divisor.at(i) = true;
  for (std::size_t i = 0; i < ring->size(); ++i)
    if (m[i] > 0 && !on_divisor[i]) return std::nullopt;

  // m divides every generator and Q[x] is a domain, so (I : m) is generated
  // by the quotients.
  std::vector<Polynomial> residual;
  for (const auto& g : ideal.generators()) residual.push_back(g.divide_monomial(m));
  IdealPresentation colon(ring, residual);
  if (!(colon + point_ideal(ring, point)).is_unit()) return std::nullopt;
  for (const auto& r : residual)
    if (r.evaluate(point) != 0) return PrincipalMonomialCertificate{m, r};
  throw error("internal: unit colon ideal without a generator nonvanishing at the point");
}

}  // namespace logfit
