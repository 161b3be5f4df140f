#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "logfit/error.hpp"
#include "logfit/monomial.hpp"
#include "logfit/rational.hpp"

namespace logfit {

/// Ordered list of variable names; polynomials over the same Ring share it.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw domain_error("duplicate variable '" + names_[i] + "'");
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw unknown_variable(name);
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial over Q. Terms are kept sorted by decreasing degrevlex,
/// with no zero coefficients, so equal polynomials have equal term lists.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_.push_back({Monomial(ring->size()), canonical(c)});
    return p;
  }

  static Polynomial monomial(RingPtr ring, Monomial m, const Rational& c = 1) {
    Polynomial p(ring);
    if (m.size() != ring->size()) throw domain_error("monomial length does not match ring");
    if (c != 0) p.terms_.push_back({std::move(m), canonical(c)});
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t index) {
    auto n = ring->size();
    return monomial(std::move(ring), Monomial::variable(n, index));
  }

  static Polynomial variable(const RingPtr& ring, const std::string& name) {
    return variable(ring, ring->index(name));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t nvars() const noexcept { return ring_->size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
  }
  bool is_monomial_term() const noexcept { return terms_.size() == 1; }

  /// Constant coefficient (zero when absent).
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }

  long total_degree() const {
    long d = -1;
    for (const auto& t : terms_) d = std::max<long>(d, static_cast<long>(t.mono.degree()));
    return d;
  }

  /// Leading term for the storage order (degrevlex).
  const Term& leading() const {
    if (terms_.empty()) throw domain_error("leading term of zero polynomial");
    return terms_.front();
  }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, -1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.push_back({m, std::move(c)});
    return Polynomial(a.ring_, std::move(terms));
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    if (c == 0) return Polynomial(p.ring_);
    Polynomial r(p);
    const Rational k = canonical(c);
    for (auto& t : r.terms_) t.coeff *= k;
    return r;
  }

  Polynomial mul_term(const Monomial& m, const Rational& c) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial r(ring_);
    const Rational k = canonical(c);
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves any monomial order.
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * k});
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned long e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial partial_derivative(std::size_t var) const {
    if (var >= nvars()) throw domain_error("derivative variable index out of range");
    std::vector<Term> terms;
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Monomial m = t.mono;
      Exponent e = m[var];
      m[var] = e - 1;
      terms.push_back({std::move(m), t.coeff * e});
    }
    return Polynomial(ring_, std::move(terms));
  }

  Polynomial partial_derivative(const std::string& var) const { return partial_derivative(ring_->index(var)); }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars())
      throw domain_error("evaluation point has " + std::to_string(point.size()) + " coordinates, ring has " +
                         std::to_string(nvars()));
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < nvars() && v != 0; ++i) {
        Exponent e = t.mono[i];
        if (e == 0) continue;
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), e);
        mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), e);
        v *= p;
      }
      sum += v;
    }
    return sum;
  }

  /// Largest monomial dividing every term.
  Monomial monomial_content() const {
    if (is_zero()) throw domain_error("monomial content of the zero polynomial");
    Monomial m = terms_.front().mono;
    for (const auto& t : terms_) m = gcd(m, t.mono);
    return m;
  }

  /// Quotient by a monomial dividing every term.
  Polynomial divide_monomial(const Monomial& m) const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!m.divides(t.mono)) throw domain_error("monomial does not divide polynomial");
      r.terms_.push_back({t.mono / m, t.coeff});
    }
    return r;
  }

  /// Exact quotient *this / d, or nullopt when d does not divide *this.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const {
    check_ring(*this, d);
    if (d.is_zero()) throw domain_error("division by zero polynomial");
    if (d.is_monomial_term()) {
      const auto& [dm, dc] = d.terms_.front();
      Polynomial q(ring_);
      for (const auto& t : terms_) {
        if (!dm.divides(t.mono)) return std::nullopt;
        q.terms_.push_back({t.mono / dm, t.coeff / dc});
      }
      return q;
    }
    // If d | f, the leading term of every intermediate remainder is divisible
    // by lt(d); otherwise the division fails.
    Polynomial rem = *this;
    std::vector<Term> quot;
    const auto& [lm, lc] = d.terms_.front();
    while (!rem.is_zero()) {
      const auto& lt = rem.terms_.front();
      if (!lm.divides(lt.mono)) return std::nullopt;
      Monomial qm = lt.mono / lm;
      Rational qc = lt.coeff / lc;
      rem -= d.mul_term(qm, qc);
      quot.push_back({std::move(qm), std::move(qc)});
    }
    return Polynomial(ring_, std::move(quot));
  }

  /// Substitutes images[i] for variable i. All images share one ring.
  Polynomial substitute(std::span<const Polynomial> images, const RingPtr& target) const {
    if (images.size() != nvars()) throw domain_error("substitution needs one image per variable");
    Polynomial result(target);
    std::vector<std::vector<Polynomial>> powers(nvars());
    for (const auto& t : terms_) {
      Polynomial term = constant(target, t.coeff);
      for (std::size_t i = 0; i < nvars(); ++i) {
        Exponent e = t.mono[i];
        if (e == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        term *= cache[e];
      }
      result += term;
    }
    return result;
  }

  /// Re-expresses the polynomial in `target`, where variable i maps to
  /// target variable index_map[i].
  Polynomial embed(const RingPtr& target, std::span<const std::size_t> index_map) const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->size());
      for (std::size_t i = 0; i < nvars(); ++i) m[index_map[i]] += t.mono[i];
      terms.push_back({std::move(m), t.coeff});
    }
    return Polynomial(target, std::move(terms));
  }

  /// Embeds into a ring that extends this one by name (all names must exist there).
  Polynomial embed(const RingPtr& target) const {
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) map[i] = target->index(ring_->name(i));
    return embed(target, map);
  }

  /// Variables that occur with positive exponent.
  std::vector<bool> support() const {
    std::vector<bool> s(nvars(), false);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars(); ++i)
        if (t.mono[i] > 0) s[i] = true;
    return s;
  }

  /// Scales so the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / terms_.front().coeff;
    return inv * *this;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (!same_ring(a.ring_, b.ring_)) throw ambient_mismatch("polynomials live in different rings");
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, int sign) {
    check_ring(a, b);
    Polynomial r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == a.terms_.size()) cmp = -1;
      else if (j == b.terms_.size()) cmp = 1;
      else cmp = degrevlex_compare(a.terms_[i].mono, b.terms_[j].mono);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (sign < 0) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        Rational c = a.terms_[i].coeff;
        if (sign > 0) c += b.terms_[j].coeff;
        else c -= b.terms_[j].coeff;
        if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    for (auto& t : terms_) {
      if (t.mono.size() != ring_->size()) throw domain_error("monomial length does not match ring");
      t.coeff.canonicalize();
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return degrevlex_compare(x.mono, y.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) out.back().coeff += t.coeff;
      else out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_to_string(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.name(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + '*';
      out += monomial_to_string(t.mono, *ring_);
    }
  }
  return out;
}

}  // namespace logfit
