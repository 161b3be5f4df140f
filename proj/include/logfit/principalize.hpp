#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "logfit/blowup.hpp"
#include "logfit/classify.hpp"
#include "logfit/fitting.hpp"

namespace logfit {

/// Monomial ideal given by its minimal generators (an antichain under
/// divisibility), sorted by decreasing degrevlex.
class MonomialIdeal {
 public:
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
    for (const auto& g : gens)
      if (g.size() != nvars) throw ambient_mismatch("monomial generator of the wrong length");
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return degrevlex_compare(a, b) > 0; });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
        redundant = j != i && gens[j].divides(gens[i]);
      if (!redundant) gens_.push_back(gens[i]);
    }
  }

  /// Monomial ideal with the same zero set and generators as `ideal`, if
  /// its reduced Groebner basis consists of monomials.
  static std::optional<MonomialIdeal> from_ideal(const IdealPresentation& ideal) {
    std::vector<Monomial> gens;
    for (const auto& g : ideal.basis().elements) {
      if (g.terms.size() != 1) return std::nullopt;
      gens.push_back(g.terms.front().mono);
    }
    return MonomialIdeal(ideal.ring()->size(), std::move(gens));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_principal() const noexcept { return gens_.size() == 1; }

  IdealPresentation to_ideal(const RingPtr& ring) const {
    std::vector<Polynomial> p;
    for (const auto& g : gens_) p.push_back(Polynomial::monomial(ring, g));
    return IdealPresentation(ring, p);
  }

  std::string to_string(const Ring& ring) const {
    if (gens_.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + monomial_to_string(gens_[i], ring);
    return s + ")";
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.nvars_ == b.nvars_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

/// Exponents of a monomial after the chart substitution w_j -> w_c * w_j
/// (j in center, j != c).
inline Monomial chart_transform(const Monomial& m, const std::vector<std::size_t>& center, std::size_t distinguished) {
  Monomial out = m;
  for (auto j : center)
    if (j != distinguished) out[distinguished] += m[j];
  return out;
}

inline MonomialIdeal chart_transform(const MonomialIdeal& I, const std::vector<std::size_t>& center,
                                     std::size_t distinguished) {
  std::vector<Monomial> g;
  for (const auto& m : I.generators()) g.push_back(chart_transform(m, center, distinguished));
  return MonomialIdeal(I.nvars(), std::move(g));
}

/// For the first two surviving generators g, h with d = g - h:
/// (number of survivors, max d - min d, number of coordinates attaining the
/// max or the min). Decreases lexicographically at every blowup.
using TerminationMeasure = std::tuple<std::size_t, long, std::size_t>;

struct PrincipalizationStep {
  std::size_t node;
  std::vector<std::size_t> center;
  std::vector<std::size_t> children;
  std::vector<MonomialIdeal> child_ideals;
  TerminationMeasure measure;
  std::vector<TerminationMeasure> child_measures;
};

struct PrincipalLeaf {
  std::size_t node;
  MonomialIdeal ideal;
  PrincipalMonomialCertificate certificate;
};

struct Principalization {
  BlowupTree tree;
  std::vector<PrincipalizationStep> steps;
  std::vector<PrincipalLeaf> leaves;
};

struct PrincipalizeOptions {
  std::size_t max_depth = 64;
};

namespace detail {

// Original minimal generators carried through the charts; `alive` indexes
// those still minimal. Divisibility is preserved by chart transforms, so
// the alive set only shrinks.
struct TrackedGenerators {
  std::vector<Monomial> gens;
  std::vector<std::size_t> alive;

  void prune() {
    std::vector<std::size_t> keep;
    for (auto i : alive) {
      bool redundant = false;
      for (auto j : alive)
        if (j != i && gens[j].divides(gens[i])) redundant = true;
      if (!redundant) keep.push_back(i);
    }
    alive = std::move(keep);
  }

  std::vector<long> difference() const {
    const auto& g = gens[alive[0]];
    const auto& h = gens[alive[1]];
    std::vector<long> d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = static_cast<long>(g[i]) - static_cast<long>(h[i]);
    return d;
  }

  TerminationMeasure measure() const {
    if (alive.size() < 2) return {alive.size(), 0, 0};
    auto d = difference();
    auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    auto extremal = static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [&](long x) { return x == *lo || x == *hi; }));
    return {alive.size(), *hi - *lo, extremal};
  }

  MonomialIdeal ideal() const {
    std::vector<Monomial> g;
    for (auto i : alive) g.push_back(gens[i]);
    return MonomialIdeal(gens.front().size(), std::move(g));
  }
};

// Center {i, j} with i the first coordinate where g - h is largest and j the
// first where it is smallest. In either chart the changed entry becomes
// d_i + d_j, strictly between the two extremes, so the spread or the number
// of extremal coordinates drops.
inline std::vector<std::size_t> choose_center(const TrackedGenerators& t) {
  auto d = t.difference();
  auto hi = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  auto lo = static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
  if (d[hi] <= 0 || d[lo] >= 0) throw error("internal: surviving generators are comparable");
  return {std::min(hi, lo), std::max(hi, lo)};
}

}  // namespace detail

/// Blows up codimension-2 coordinate centers inside E until the transform
/// of I is principal in every chart. Throws if a branch exceeds max_depth or
/// if the termination measure fails to drop.
inline Principalization goward_principalize(const MonomialIdeal& I, const ChartedPair& X,
                                            const PrincipalizeOptions& options = {}) {
  if (I.nvars() != X.dimension()) throw ambient_mismatch("monomial ideal and chart have different variable counts");
  if (I.is_zero()) throw domain_error("principalization of the zero ideal");
  for (const auto& g : I.generators())
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] > 0 && !X.is_divisor(i))
        throw domain_error("monomial ideal involves free variable " + X.ring()->name(i) +
                           "; generators must be supported on divisor variables");

  Principalization out{BlowupTree(X), {}, {}};
  std::vector<detail::TrackedGenerators> state(1);
  state[0].gens = I.generators();
  for (std::size_t i = 0; i < I.generators().size(); ++i) state[0].alive.push_back(i);

  for (std::size_t id = 0; id < out.tree.size(); ++id) {
    auto here = state[id];
    if (here.alive.size() == 1) {
      const auto& chart = out.tree.node(id).chart;
      out.leaves.push_back({id, here.ideal(),
                            PrincipalMonomialCertificate{here.gens[here.alive[0]], Polynomial::constant(chart.ring(), 1)}});
      continue;
    }
    if (out.tree.node(id).depth >= options.max_depth)
      throw error("principalization exceeded the depth cap of " + std::to_string(options.max_depth));

    auto center = detail::choose_center(here);
    auto children = out.tree.expand(id, center);
    PrincipalizationStep step{id, center, children, {}, here.measure(), {}};
    for (auto child : children) {
      detail::TrackedGenerators t = here;
      for (auto& g : t.gens) g = chart_transform(g, center, out.tree.node(child).distinguished);
      t.prune();
      auto m = t.measure();
      if (!(m < step.measure))
        throw error("internal: termination measure did not decrease at node " + std::to_string(child));
      step.child_ideals.push_back(t.ideal());
      step.child_measures.push_back(m);
      state.push_back(std::move(t));
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

struct MonomializedLeaf {
  std::size_t node;
  MorphismOfPairs morphism;
  ExponentMatrix exponents;
  std::optional<PrincipalMonomialCertificate> strong_at_origin;
  std::size_t points_checked = 0;
  Verdict certified;
};

struct Monomialization {
  MonomialIdeal fitting;
  Principalization principalization;
  std::vector<MonomializedLeaf> leaves;

  bool all_certified() const {
    return std::all_of(leaves.begin(), leaves.end(), [](const MonomializedLeaf& l) { return l.certified.ok; });
  }
};

struct MonomializeOptions {
  std::size_t max_depth = 64;
  unsigned seed = 0;
  std::size_t samples = 5;
  int coordinate_bound = 5;
};

/// Random point of the chart on a nonempty divisor stratum (origin-like in
/// the zeroed divisor variables, nonzero elsewhere on E).
inline RationalPoint sample_stratum_point(const ChartedPair& chart, std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> coord(-bound, bound);
  RationalPoint p;
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    int x = coord(rng);
    if (chart.is_divisor(i) && x == 0) x = 1;
    p.coords.emplace_back(x);
  }
  auto div = chart.divisor_vars();
  if (div.empty()) return p;
  std::size_t mask = 0;
  while (mask == 0) mask = std::uniform_int_distribution<std::size_t>(0, (std::size_t{1} << div.size()) - 1)(rng);
  for (std::size_t b = 0; b < div.size(); ++b)
    if (mask & (std::size_t{1} << b)) p.coords[div[b]] = 0;
  return p;
}

/// Principalizes the top log-Fitting ideal of a monomial morphism onto a
/// surface and certifies every leaf: strongly prepared and monomial of rank
/// 2 at the chart origin and at sampled stratum points.
inline Monomialization monomialize_monomial_morphism(const MorphismOfPairs& phi, const MonomializeOptions& options = {}) {
  if (phi.target_dim() != 2) throw domain_error("monomialisation driver needs a surface target (N = 2)");
  for (std::size_t i = 0; i < phi.target_dim(); ++i)
    if (!phi.component(i).is_monomial_term())
      throw domain_error("component " + phi.target().ring()->name(i) + " = " + phi.component(i).to_string() +
                         " is not a monomial; general morphisms need the full monomialisation pipeline, "
                         "which is not implemented");
  auto qp = is_quasi_prepared(phi);
  if (!qp) throw domain_error("morphism is not quasi-prepared: " + qp.diagnostics.front());

  const auto& src = phi.source();
  auto f = MonomialIdeal::from_ideal(log_fitting_ideal(phi, 2));
  if (!f || f->is_zero()) throw error("internal: top log-Fitting ideal of a monomial morphism is not a nonzero monomial ideal");
  Monomialization out{*f, goward_principalize(*f, src, {options.max_depth}), {}};

  std::mt19937 rng(options.seed);
  for (const auto& leaf : out.principalization.leaves) {
    auto psi = out.principalization.tree.transform(phi, leaf.node);
    const auto& chart = psi.source();
    StrongPreparationTest strong(psi);
    std::vector<RationalPoint> points{RationalPoint::origin(chart.dimension())};
    for (std::size_t s = 0; s < options.samples; ++s) points.push_back(sample_stratum_point(chart, rng, options.coordinate_bound));

    MonomializedLeaf rec{leaf.node, psi, {}, strong.at(points.front()), 0, {}};
    if (!strong.quasi_prepared()) rec.certified.fail("transform is not quasi-prepared");
    for (const auto& p : points) {
      ++rec.points_checked;
      if (!strong.at(p)) rec.certified.fail("not strongly prepared at (" + p.to_string() + ")");
      auto mat = is_monomial_morphism_at(psi, p);
      if (!mat) rec.certified.fail("not monomial of rank 2 at (" + p.to_string() + ")");
      else rec.exponents = *mat;
    }
    out.leaves.push_back(std::move(rec));
  }
  return out;
}

}  // namespace logfit
