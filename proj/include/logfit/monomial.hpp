#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace logfit {

using Exponent = std::uint32_t;

/// Exponent vector indexed by the variables of a ring.
class Monomial {
 public:
  using storage = boost::container::small_vector<Exponent, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}
  explicit Monomial(const std::vector<Exponent>& exps) : exps_(exps.begin(), exps.end()) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
    Monomial m(nvars);
    m.exps_[index] = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  auto begin() const noexcept { return exps_.begin(); }
  auto end() const noexcept { return exps_.end(); }

  unsigned long degree() const noexcept {
    return std::accumulate(exps_.begin(), exps_.end(), 0ul);
  }

  bool is_one() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  /// True iff *this divides other.
  bool divides(const Monomial& other) const {
    assert(size() == other.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    assert(size() == o.size());
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
    return r;
  }

  /// Exact quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    assert(o.divides(*this));
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= o.exps_[i];
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::vector<Exponent> to_vector() const { return {exps_.begin(), exps_.end()}; }

 private:
  storage exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Exponent e : m) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

/// Graded reverse lexicographic comparison over all variables.
inline int degrevlex_compare(const Monomial& a, const Monomial& b) {
  unsigned long da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

/// Product of graded-reverse-lexicographic blocks. One block over all
/// variables is degrevlex; one singleton block per variable is lex; two
/// blocks give an elimination order with the first block eliminated.
class MonomialOrder {
 public:
  enum class Kind { degrevlex, lex, elimination };

  static MonomialOrder degrevlex(std::size_t nvars) {
    std::vector<std::size_t> all(nvars);
    std::iota(all.begin(), all.end(), 0);
    return MonomialOrder(Kind::degrevlex, {std::move(all)});
  }

  static MonomialOrder lex(std::size_t nvars) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < nvars; ++i) blocks.push_back({i});
    return MonomialOrder(Kind::lex, std::move(blocks));
  }

  /// Block order with the `eliminate` variables greater than all others.
  static MonomialOrder elimination(std::size_t nvars, const std::vector<std::size_t>& eliminate) {
    std::vector<bool> in(nvars, false);
    for (auto i : eliminate) in[i] = true;
    std::vector<std::size_t> first, second;
    for (std::size_t i = 0; i < nvars; ++i) (in[i] ? first : second).push_back(i);
    std::vector<std::vector<std::size_t>> blocks;
    if (!first.empty()) blocks.push_back(std::move(first));
    if (!second.empty()) blocks.push_back(std::move(second));
    return MonomialOrder(Kind::elimination, std::move(blocks));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

  /// Three-way comparison: negative, zero, positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& block : blocks_) {
      unsigned long da = 0, db = 0;
      for (auto i : block) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
      for (auto it = block.rbegin(); it != block.rend(); ++it) {
        if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& x, const MonomialOrder& y) {
    return x.blocks_ == y.blocks_;
  }

 private:
  MonomialOrder(Kind kind, std::vector<std::vector<std::size_t>> blocks)
      : kind_(kind), blocks_(std::move(blocks)) {}

  Kind kind_;
  std::vector<std::vector<std::size_t>> blocks_;
};

}  // namespace logfit
