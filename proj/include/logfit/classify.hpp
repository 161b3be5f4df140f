#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "logfit/chart.hpp"
#include "logfit/fitting.hpp"
#include "logfit/ideal.hpp"
#include "logfit/rank.hpp"

namespace logfit {

/// Ideal of N x N minors of the Jacobian; its zero set is Sing(Phi).
inline IdealPresentation singular_locus_ideal(const MorphismOfPairs& phi) {
  if (phi.source_dim() < phi.target_dim())
    throw domain_error("singular locus needs n >= N (source dimension below target dimension)");
  return IdealPresentation(phi.source().ring(),
                           all_minors(jacobian_matrix(phi), phi.target_dim(), phi.source().ring()));
}

/// Sing(Phi) in E and Phi^{-1}(F)_red == E.
inline Verdict is_quasi_prepared(const MorphismOfPairs& phi) {
  auto sing = singular_locus_ideal(phi);
  Verdict v = preimage_equality_check(phi);
  if (!radical_membership(phi.source().divisor_product(), sing)) v.fail("Sing(Phi) is not contained in E");
  return v;
}

/// Strong preparation onto a surface at `a`, tested through the top
/// log-Fitting ideal. Computes quasi-preparedness and the ideal once.
class StrongPreparationTest {
 public:
  explicit StrongPreparationTest(const MorphismOfPairs& phi) : phi_(phi), fitting_(phi.source().ring()) {
    if (phi.target_dim() != 2) throw domain_error("strong preparation is defined for surface targets (N = 2)");
    quasi_prepared_ = is_quasi_prepared(phi);
    if (quasi_prepared_) fitting_ = log_fitting_ideal(phi, 2);
  }

  const Verdict& quasi_prepared() const noexcept { return quasi_prepared_; }
  const IdealPresentation& top_fitting_ideal() const noexcept { return fitting_; }

  std::optional<PrincipalMonomialCertificate> at(const RationalPoint& a) const {
    if (!quasi_prepared_ || fitting_.is_zero_ideal()) return std::nullopt;
    return is_principal_monomial_at(fitting_, a.span(), phi_.source().divisor_vars());
  }

 private:
  MorphismOfPairs phi_;
  Verdict quasi_prepared_;
  IdealPresentation fitting_;
};

inline std::optional<PrincipalMonomialCertificate> is_strongly_prepared_at(const MorphismOfPairs& phi,
                                                                           const RationalPoint& a) {
  return StrongPreparationTest(phi).at(a);
}

/// Normal-form data for one of the three strongly prepared shapes.
///   case 1: x1 = (u^alpha)^m, z = P(u^alpha) + u^beta * v
///   case 2: x1 = (u^alpha)^m, z = P(u^alpha) + u^beta, alpha ^ beta != 0
///   case 3: x1 = u_1^a1...u_{k-1}^a_{k-1}, x2 = u_2^b2...u_k^bk
/// Exponent vectors are indexed along `stratum`, the ordered u_1..u_k.
struct StronglyPreparedCertificate {
  int case_tag = 0;
  std::vector<std::size_t> stratum;
  std::vector<Exponent> alpha;
  std::vector<Exponent> beta;
  Exponent multiplicity = 1;  // m; unused in case 3
  Polynomial series{make_ring({"t"})};  // P(t); zero in case 3
  std::size_t x1_component = 0;
  std::size_t z_component = 1;
  bool z_divisorial = false;
  std::optional<std::size_t> free_variable;  // the v of case 1
};

namespace detail {

inline bool proportional(const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (static_cast<long long>(a[i]) * b[j] != static_cast<long long>(a[j]) * b[i]) return false;
  return true;
}

inline std::optional<StronglyPreparedCertificate> match_case3(const MorphismOfPairs& phi,
                                                              const std::vector<Polynomial>& comps,
                                                              std::size_t x1, std::size_t x2,
                                                              const std::vector<std::size_t>& stratum) {
  const auto& p = comps[x1];
  const auto& q = comps[x2];
  if (!p.is_monomial_term() || !q.is_monomial_term() || stratum.size() < 2) return std::nullopt;
  const auto& pm = p.terms().front().mono;
  const auto& qm = q.terms().front().mono;
  std::vector<bool> in_stratum(phi.source_dim(), false);
  for (auto d : stratum) in_stratum[d] = true;
  for (std::size_t i = 0; i < phi.source_dim(); ++i)
    if (!in_stratum[i] && (pm[i] > 0 || qm[i] > 0)) return std::nullopt;

  std::optional<std::size_t> first, last;
  for (auto d : stratum) {
    if (pm[d] == 0 && qm[d] == 0) return std::nullopt;
    if (pm[d] > 0 && qm[d] == 0 && !first) first = d;
    if (qm[d] > 0 && pm[d] == 0) last = d;
  }
  if (!first || !last) return std::nullopt;

  StronglyPreparedCertificate cert;
  cert.case_tag = 3;
  cert.stratum.push_back(*first);
  for (auto d : stratum)
    if (d != *first && d != *last) cert.stratum.push_back(d);
  cert.stratum.push_back(*last);
  for (auto d : cert.stratum) {
    cert.alpha.push_back(pm[d]);
    cert.beta.push_back(qm[d]);
  }
  cert.series = Polynomial(make_ring({"t"}));
  cert.x1_component = x1;
  cert.z_component = x2;
  cert.z_divisorial = true;
  return cert;
}

inline std::optional<StronglyPreparedCertificate> match_case12(const MorphismOfPairs& phi,
                                                               const std::vector<Polynomial>& comps,
                                                               std::size_t x1, std::size_t z,
                                                               const std::vector<std::size_t>& stratum) {
  const std::size_t n = phi.source_dim();
  const std::size_t k = stratum.size();
  if (k < 1 || k > n - 1) return std::nullopt;
  const auto& p = comps[x1];
  if (!p.is_monomial_term()) return std::nullopt;
  const auto& pm = p.terms().front().mono;
  std::vector<bool> in_stratum(n, false);
  for (auto d : stratum) in_stratum[d] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_stratum[i] && pm[i] == 0) return std::nullopt;
    if (!in_stratum[i] && pm[i] > 0) return std::nullopt;
  }
  Exponent m = 0;
  for (auto d : stratum) m = std::gcd(m, pm[d]);
  std::vector<Exponent> alpha;
  for (auto d : stratum) alpha.push_back(pm[d] / m);

  // Split z into P(u^alpha) and a single remaining term.
  auto t_ring = make_ring({"t"});
  std::vector<Term> series_terms;
  std::vector<const Term*> rest;
  for (const auto& term : comps[z].terms()) {
    bool on_stratum_only = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_stratum[i] && term.mono[i] > 0) on_stratum_only = false;
    std::optional<Exponent> multiple;
    if (on_stratum_only) {
      Exponent t = term.mono[stratum[0]] / alpha[0];
      bool ok = true;
      for (std::size_t s = 0; s < k; ++s)
        if (term.mono[stratum[s]] != t * alpha[s]) ok = false;
      if (ok) multiple = t;
    }
    if (multiple) series_terms.push_back({Monomial{*multiple}, term.coeff});
    else rest.push_back(&term);
  }
  if (rest.size() != 1) return std::nullopt;
  const auto& r = rest.front()->mono;

  StronglyPreparedCertificate cert;
  cert.stratum = stratum;
  cert.alpha = alpha;
  cert.multiplicity = m;
  cert.series = Polynomial(t_ring, std::move(series_terms));
  cert.x1_component = x1;
  cert.z_component = z;
  cert.z_divisorial = phi.target().is_divisor(z);
  for (auto d : stratum) cert.beta.push_back(r[d]);

  std::optional<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_stratum[i] || r[i] == 0) continue;
    if (phi.source().is_divisor(i) || r[i] != 1 || v) return std::nullopt;
    v = i;
  }
  if (v) {
    cert.case_tag = 1;
    cert.free_variable = v;
    return cert;
  }
  if (k < 2 || proportional(alpha, cert.beta)) return std::nullopt;
  cert.case_tag = 2;
  return cert;
}

}  // namespace detail

/// Literal recognizer for the three normal forms at `a`. Free coordinates
/// are recentred at a; divisor variables nonzero at a must not occur.
/// A miss says nothing about strong preparation in other coordinates.
inline std::optional<StronglyPreparedCertificate> match_spm_template(const MorphismOfPairs& phi,
                                                                     const RationalPoint& a) {
  if (phi.target_dim() != 2) return std::nullopt;
  const auto& src = phi.source();
  auto stratum = stratum_of_point(src, a);
  if (stratum.empty()) return std::nullopt;

  const auto& ring = src.ring();
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < src.dimension(); ++i) {
    Polynomial x = Polynomial::variable(ring, i);
    if (!src.is_divisor(i)) x += Polynomial::constant(ring, a[i]);
    shift.push_back(std::move(x));
  }
  std::vector<Polynomial> comps;
  for (const auto& c : phi.components()) comps.push_back(c.substitute(shift, ring));
  std::vector<bool> in_stratum(src.dimension(), false);
  for (auto d : stratum) in_stratum[d] = true;
  for (const auto& c : comps) {
    auto s = c.support();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] && src.is_divisor(i) && !in_stratum[i]) return std::nullopt;
  }

  const auto& tgt = phi.target();
  if (tgt.is_divisor(0) && tgt.is_divisor(1)) {
    if (auto c = detail::match_case3(phi, comps, 0, 1, stratum)) return c;
    if (auto c = detail::match_case3(phi, comps, 1, 0, stratum)) return c;
  }
  for (std::size_t x1 : {0u, 1u}) {
    if (!tgt.is_divisor(x1)) continue;
    if (auto c = detail::match_case12(phi, comps, x1, 1 - x1, stratum)) return c;
  }
  return std::nullopt;
}

using ExponentMatrix = std::vector<std::vector<Exponent>>;

/// Each component = (unit at a) * monomial, with exponent matrix of full
/// row rank. Returns the matrix.
inline std::optional<ExponentMatrix> is_monomial_morphism_at(const MorphismOfPairs& phi, const RationalPoint& a) {
  if (a.size() != phi.source_dim()) throw domain_error("point does not belong to the source chart");
  ExponentMatrix rows;
  for (const auto& c : phi.components()) {
    if (c.is_zero()) return std::nullopt;
    Monomial m = c.monomial_content();
    if (c.divide_monomial(m).evaluate(a.span()) == 0) return std::nullopt;
    rows.push_back(m.to_vector());
  }
  std::vector<std::vector<Rational>> q;
  for (const auto& r : rows) q.emplace_back(r.begin(), r.end());
  if (rational_rank(q) != phi.target_dim()) return std::nullopt;
  return rows;
}

/// Nested divisor-variable sets E^(1) = E, E^(2), ... (levels[k-1] is E^(k)).
struct DivisorFiltration {
  std::vector<std::vector<std::size_t>> levels;

  void validate(const ChartedPair& chart) const {
    if (levels.empty()) throw domain_error("malformed filtration: no levels");
    auto e = chart.divisor_vars();
    auto first = levels.front();
    std::sort(first.begin(), first.end());
    if (first != e) throw domain_error("malformed filtration: E^(1) must equal the chart divisor");
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
      for (auto v : levels[k + 1])
        if (std::find(levels[k].begin(), levels[k].end(), v) == levels[k].end())
          throw domain_error("malformed filtration: E^(" + std::to_string(k + 2) + ") is not inside E^(" +
                             std::to_string(k + 1) + ")");
  }
};

struct SamplingOptions {
  unsigned seed = 0;
  std::size_t samples_per_level = 12;
  int coordinate_bound = 5;
};

/// Verifies the log-rank adapted conditions at `a` for caller-supplied
/// filtration and target stratum ideal (generators of I_{Y_{N-r}} in target
/// variables). Quasi-preparedness of phi is the caller's precondition.
inline Verdict is_log_rank_adapted_at(const MorphismOfPairs& phi, const RationalPoint& a,
                                      const DivisorFiltration& filtration,
                                      const IdealPresentation& target_stratum_ideal,
                                      const SamplingOptions& sampling = {}) {
  const auto& src = phi.source();
  filtration.validate(src);
  Verdict v;
  const std::size_t n = phi.source_dim(), big_n = phi.target_dim();
  const std::size_t r = log_rank_at_point(phi.with_empty_target_divisor(), a);
  const auto& ring = src.ring();

  // (1) Phi_1..Phi_r are distinct free variables, Phi_{r+1} a divisor monomial
  // generating the pulled-back stratum ideal.
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < r; ++i) {
    const auto& c = phi.component(i);
    bool ok = false;
    for (auto j : src.free_vars())
      if (!used[j] && c == Polynomial::variable(ring, j)) {
        used[j] = true;
        ok = true;
        break;
      }
    if (!ok) v.fail("component " + std::to_string(i + 1) + " (" + c.to_string() + ") is not a distinct free variable");
  }
  if (r < big_n) {
    const auto& c = phi.component(r);
    bool monomial = c.is_monomial_term();
    if (monomial) {
      auto s = c.support();
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] && !src.is_divisor(i)) monomial = false;
    }
    if (!monomial) {
      v.fail("component " + std::to_string(r + 1) + " (" + c.to_string() + ") is not a monomial in divisor variables");
    } else if (target_stratum_ideal.is_zero_ideal()) {
      v.fail("no target stratum ideal supplied");
    } else {
      if (!same_ring(target_stratum_ideal.ring(), phi.target().ring()))
        throw ambient_mismatch("target stratum ideal must be written in target variables");
      std::vector<Polynomial> pulled;
      for (const auto& g : target_stratum_ideal.generators()) pulled.push_back(phi.pullback(g));
      IdealPresentation pulled_ideal(ring, pulled);
      IdealPresentation principal(ring, {c});
      if (!pulled_ideal.contains(c) || !principal.contains(pulled_ideal))
        v.fail("pullback of the target stratum ideal is not generated by component " + std::to_string(r + 1));
    }
  }

  // (2) log-rank is min(n, N) - k on E^(k) \ E^(k+1).
  std::mt19937 rng(sampling.seed);
  std::uniform_int_distribution<int> coord(-sampling.coordinate_bound, sampling.coordinate_bound);
  const std::size_t top = std::min(n, big_n);
  for (std::size_t k = 0; k < filtration.levels.size(); ++k) {
    const auto& level = filtration.levels[k];
    std::vector<std::size_t> next = k + 1 < filtration.levels.size() ? filtration.levels[k + 1] : std::vector<std::size_t>{};
    std::vector<std::size_t> zeroable;
    for (auto u : level)
      if (std::find(next.begin(), next.end(), u) == next.end()) zeroable.push_back(u);
    if (zeroable.empty()) continue;
    long expected = static_cast<long>(top) - static_cast<long>(k + 1);
    for (std::size_t s = 0; s < sampling.samples_per_level; ++s) {
      RationalPoint p;
      for (std::size_t i = 0; i < n; ++i) {
        int x = coord(rng);
        if (src.is_divisor(i) && x == 0) x = 1;
        p.coords.emplace_back(x);
      }
      // Zero a nonempty random subset of the coordinates allowed to vanish.
      std::size_t mask = 0;
      while (mask == 0) mask = std::uniform_int_distribution<std::size_t>(1, (1u << zeroable.size()) - 1)(rng);
      for (std::size_t b = 0; b < zeroable.size(); ++b)
        if (mask & (1u << b)) p.coords[zeroable[b]] = 0;
      long got = static_cast<long>(log_rank_at_point(phi, p));
      if (got != expected) {
        v.fail("log-rank " + std::to_string(got) + " at (" + p.to_string() + ") on E^(" + std::to_string(k + 1) +
               ") \\ E^(" + std::to_string(k + 2) + "), expected " + std::to_string(expected));
        break;
      }
    }
  }
  return v;
}

}  // namespace logfit
