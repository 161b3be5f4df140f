#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "logfit/ideal.hpp"
#include "logfit/polynomial.hpp"

namespace logfit {

/// Affine chart with adapted coordinates: the divisor E is the zero set of
/// the product of the divisor variables (the u-block); the rest are free.
class ChartedPair {
 public:
  ChartedPair(std::vector<std::string> variables, const std::vector<std::string>& divisor)
      : ring_(make_ring(std::move(variables))), on_divisor_(ring_->size(), false) {
    for (const auto& name : divisor) {
      auto i = ring_->index(name);
      if (on_divisor_[i]) throw domain_error("divisor variable '" + name + "' listed twice");
      on_divisor_[i] = true;
    }
  }

  ChartedPair(RingPtr ring, std::vector<bool> on_divisor) : ring_(std::move(ring)), on_divisor_(std::move(on_divisor)) {
    if (on_divisor_.size() != ring_->size()) throw domain_error("divisor mask does not match chart");
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t dimension() const noexcept { return ring_->size(); }
  const std::vector<std::string>& variables() const noexcept { return ring_->names(); }
  bool is_divisor(std::size_t i) const { return on_divisor_.at(i); }
  const std::vector<bool>& divisor_mask() const noexcept { return on_divisor_; }

  /// Divisor variable indices in chart order.
  std::vector<std::size_t> divisor_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < on_divisor_.size(); ++i)
      if (on_divisor_[i]) out.push_back(i);
    return out;
  }

  /// Free variable indices in chart order.
  std::vector<std::size_t> free_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < on_divisor_.size(); ++i)
      if (!on_divisor_[i]) out.push_back(i);
    return out;
  }

  std::vector<std::string> divisor_names() const {
    std::vector<std::string> out;
    for (auto i : divisor_vars()) out.push_back(ring_->name(i));
    return out;
  }

  /// u_1 * ... * u_s (1 for an empty divisor).
  Polynomial divisor_product() const {
    Monomial m(dimension());
    for (auto i : divisor_vars()) m[i] = 1;
    return Polynomial::monomial(ring_, m);
  }

  /// Same chart with an empty divisor.
  ChartedPair without_divisor() const { return ChartedPair(ring_, std::vector<bool>(dimension(), false)); }

  friend bool operator==(const ChartedPair& a, const ChartedPair& b) {
    return same_ring(a.ring_, b.ring_) && a.on_divisor_ == b.on_divisor_;
  }

 private:
  RingPtr ring_;
  std::vector<bool> on_divisor_;
};

/// Closed Q-rational point of a chart.
struct RationalPoint {
  std::vector<Rational> coords;

  std::size_t size() const noexcept { return coords.size(); }
  std::span<const Rational> span() const noexcept { return coords; }
  const Rational& operator[](std::size_t i) const { return coords[i]; }

  static RationalPoint origin(std::size_t n) { return {std::vector<Rational>(n, Rational(0))}; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ',';
      s += coords[i].get_str();
    }
    return s;
  }
};

/// Divisor variables vanishing at `a`; a is an s-point with s = result size.
inline std::vector<std::size_t> stratum_of_point(const ChartedPair& chart, const RationalPoint& a) {
  if (a.size() != chart.dimension()) throw domain_error("point does not belong to the chart");
  std::vector<std::size_t> out;
  for (auto i : chart.divisor_vars())
    if (a[i] == 0) out.push_back(i);
  return out;
}

/// Polynomial map between charts: one component (in source variables) per
/// target variable.
class MorphismOfPairs {
 public:
  MorphismOfPairs(ChartedPair source, ChartedPair target, std::vector<Polynomial> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (components_.size() != target_.dimension())
      throw domain_error("morphism needs one component per target variable");
    for (const auto& c : components_)
      if (!same_ring(c.ring(), source_.ring())) throw ambient_mismatch("component outside the source ring");
  }

  const ChartedPair& source() const noexcept { return source_; }
  const ChartedPair& target() const noexcept { return target_; }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& component(std::size_t i) const { return components_.at(i); }
  std::size_t source_dim() const noexcept { return source_.dimension(); }
  std::size_t target_dim() const noexcept { return target_.dimension(); }

  /// Phi^*(g) for g in the target ring.
  Polynomial pullback(const Polynomial& g) const {
    if (!same_ring(g.ring(), target_.ring())) throw ambient_mismatch("pullback of a polynomial outside the target ring");
    return g.substitute(components_, source_.ring());
  }

  /// Phi_0: same map with the target divisor declared empty.
  MorphismOfPairs with_empty_target_divisor() const {
    return MorphismOfPairs(source_, target_.without_divisor(), components_);
  }

  /// Image of a source point.
  RationalPoint image(const RationalPoint& a) const {
    RationalPoint out;
    for (const auto& c : components_) out.coords.push_back(c.evaluate(a.span()));
    return out;
  }

 private:
  ChartedPair source_;
  ChartedPair target_;
  std::vector<Polynomial> components_;
};

/// Boolean verdict with human-readable reasons for failures.
struct Verdict {
  bool ok = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const noexcept { return ok; }
  void fail(std::string why) {
    ok = false;
    diagnostics.push_back(std::move(why));
  }
};

/// Phi^{-1}(F)_red in E: for each target divisor variable x_i, the source
/// divisor product lies in rad(Phi^*(x_i)).
inline Verdict validate_pair_condition(const MorphismOfPairs& phi) {
  Verdict v;
  const auto& src = phi.source();
  auto product = src.divisor_product();
  for (auto i : phi.target().divisor_vars()) {
    const auto& c = phi.component(i);
    if (c.is_zero())
      throw domain_error("degenerate morphism: divisorial component '" + phi.target().ring()->name(i) +
                         "' pulls back to 0");
    if (!radical_membership(product, IdealPresentation(src.ring(), {c})))
      v.fail("pullback of " + phi.target().ring()->name(i) + " = " + c.to_string() + " vanishes outside E");
  }
  return v;
}

/// Phi^{-1}(F)_red == E, on top of the pair condition.
inline Verdict preimage_equality_check(const MorphismOfPairs& phi) {
  Verdict v = validate_pair_condition(phi);
  if (!v) return v;
  Monomial tm(phi.target_dim());
  for (auto i : phi.target().divisor_vars()) tm[i] = 1;
  Polynomial pulled = phi.pullback(Polynomial::monomial(phi.target().ring(), tm));
  const auto& src = phi.source();
  for (auto j : src.divisor_vars()) {
    IdealPresentation hyperplane(src.ring(), {Polynomial::variable(src.ring(), j)});
    if (!radical_membership(pulled, hyperplane))
      v.fail("divisor component " + src.ring()->name(j) + " = 0 is not in the preimage of F");
  }
  return v;
}

}  // namespace logfit
