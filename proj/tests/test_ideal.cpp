#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

using namespace logfit;
using testing_support::Gen;
using testing_support::P;

namespace {

RingPtr uv() { return make_ring({"u", "v"}); }

IdealPresentation ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(P(r, s));
  return IdealPresentation(r, g);
}

std::vector<std::string> basis_strings(const IdealPresentation& I) {
  std::vector<std::string> out;
  for (const auto& g : I.groebner_basis().generators()) out.push_back(g.to_string());
  return out;
}

// S-polynomial computed directly with polynomial arithmetic.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  auto lead = [&](const Polynomial& p) {
    Term best = p.terms().front();
    for (const auto& t : p.terms())
      if (order.greater(t.mono, best.mono)) best = t;
    return best;
  };
  auto a = lead(f), b = lead(g);
  auto l = lcm(a.mono, b.mono);
  return f.mul_term(l / a.mono, 1 / a.coeff) - g.mul_term(l / b.mono, 1 / b.coeff);
}

}  // namespace

TEST(Groebner, Examples) {
  auto r = uv();
  EXPECT_EQ(basis_strings(ideal(r, {"u", "v"})), (std::vector<std::string>{"u", "v"}));
  EXPECT_TRUE(IdealPresentation(r).groebner_basis().generators().empty());
  EXPECT_TRUE(IdealPresentation(r, {Polynomial(r)}).is_zero_ideal());
  EXPECT_EQ(basis_strings(ideal(r, {"u-v", "u+v"})), (std::vector<std::string>{"u", "v"}));
  EXPECT_EQ(basis_strings(ideal(r, {"2*u^2 + 4"})), (std::vector<std::string>{"u^2 + 2"}));
}

TEST(Groebner, ReducedAndSPolynomialsVanish) {
  Gen g(21);
  auto r = make_ring({"a", "b", "c"});
  for (int i = 0; i < 40; ++i) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < g.integer(1, 3); ++k) gens.push_back(g.polynomial(r, 3, 3));
    IdealPresentation I(r, gens);
    auto order = MonomialOrder::degrevlex(3);
    auto B = I.groebner_basis().generators();
    for (const auto& f : gens) EXPECT_TRUE(I.groebner_basis().contains(f));
    for (std::size_t x = 0; x < B.size(); ++x) {
      EXPECT_EQ(B[x].leading().coeff, 1);
      for (std::size_t y = x + 1; y < B.size(); ++y) EXPECT_TRUE(I.normal_form(s_polynomial(B[x], B[y], order)).is_zero());
      // reduced: no term of B[x] is divisible by another leading monomial
      for (std::size_t y = 0; y < B.size(); ++y)
        if (y != x) {
          for (const auto& t : B[x].terms()) EXPECT_FALSE(B[y].leading().mono.divides(t.mono));
        }
    }
  }
}

TEST(Groebner, OtherOrders) {
  auto r = make_ring({"x", "y", "u"});
  auto I = ideal(r, {"x - u", "y - u^2"});
  auto lex = I.groebner_basis(MonomialOrder::lex(3));
  EXPECT_TRUE(lex.contains(P(r, "y - x^2")));
  auto elim = I.groebner_basis(MonomialOrder::elimination(3, {2}));
  bool found = false;
  for (const auto& g : elim.generators()) found = found || g == P(r, "x^2 - y") || g == P(r, "y - x^2");
  EXPECT_TRUE(found);
}

TEST(Membership, Examples) {
  auto r = uv();
  EXPECT_TRUE(ideal_membership(P(r, "u^2"), ideal(r, {"u"})));
  EXPECT_FALSE(ideal_membership(P(r, "1"), ideal(r, {"u", "v"})));
  auto e = make_ring({"u1", "u2"});
  EXPECT_TRUE(ideal_membership(P(e, "u1^3*u2^3"), ideal(e, {"2*u1^3*u2^3"})));
  EXPECT_TRUE(ideal_membership(Polynomial(r), IdealPresentation(r)));
  EXPECT_THROW(ideal_membership(P(e, "u1"), ideal(r, {"u"})), ambient_mismatch);
}

TEST(Membership, AgreesWithLinearAlgebra) {
  Gen g(22);
  auto r = uv();
  for (int i = 0; i < 120; ++i) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < g.integer(1, 3); ++k) gens.push_back(g.polynomial(r, 3, 3));
    Polynomial f = g.coin() ? g.polynomial(r, 3, 4) : gens.front() * g.polynomial(r, 2, 2) + Polynomial(r);
    IdealPresentation I(r, gens);
    long maxdeg = 0;
    for (const auto& p : gens) maxdeg = std::max(maxdeg, p.total_degree());
    unsigned D = static_cast<unsigned>(std::max(0L, f.total_degree()) + maxdeg + 4);
    EXPECT_EQ(ideal_membership(f, I), testing_support::linear_membership(f, gens, D))
        << f.to_string() << " in " << I.to_string();
  }
}

TEST(Membership, NormalFormIndependentOfReductionPath) {
  Gen g(23);
  auto r = make_ring({"a", "b", "c"});
  for (int i = 0; i < 40; ++i) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < g.integer(2, 3); ++k) gens.push_back(g.polynomial(r, 3, 3));
    IdealPresentation I(r, gens);
    const auto& B = I.basis();
    auto f = g.polynomial(r, 4, 6);
    auto reference = I.normal_form(f);
    for (int trial = 0; trial < 5; ++trial) {
      std::mt19937 pick(static_cast<unsigned>(100 * i + trial));
      gb::ReducerChoice choose = [&](const std::vector<std::size_t>& candidates) {
        return candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(pick)];
      };
      auto nf = gb::normal_form(gb::to_ordered(f, B.order), B.elements, B.order, nullptr, choose);
      EXPECT_EQ(gb::from_ordered(r, nf), reference);
    }
    // Non-reduced generating set: path-dependent remainders still agree on membership.
    auto member = gens.front() * g.polynomial(r, 2, 2);
    EXPECT_TRUE(I.contains(member));
  }
}

TEST(Radical, Examples) {
  auto r = uv();
  EXPECT_TRUE(radical_membership(P(r, "u"), ideal(r, {"u^2"})));
  EXPECT_FALSE(radical_membership(P(r, "v"), ideal(r, {"u"})));
  auto e = make_ring({"u1", "u2"});
  EXPECT_TRUE(radical_membership(P(e, "u1*u2"), ideal(e, {"u1^3*u2^3"})));
  EXPECT_FALSE(radical_membership(P(e, "u1"), ideal(e, {"u1^3*u2^3"})));
  EXPECT_TRUE(radical_equal(ideal(e, {"u1^2*u2"}), ideal(e, {"u1*u2^5"})));
  EXPECT_FALSE(radical_equal(ideal(e, {"u1^2"}), ideal(e, {"u1*u2"})));
}

TEST(Radical, MembershipImpliesRadicalMembership) {
  Gen g(24);
  auto r = uv();
  for (int i = 0; i < 60; ++i) {
    std::vector<Polynomial> gens{g.polynomial(r, 3, 3), g.polynomial(r, 3, 3)};
    IdealPresentation I(r, gens);
    auto f = g.coin() ? gens[0] * g.polynomial(r, 1, 2) : g.polynomial(r, 3, 3);
    if (ideal_membership(f, I)) {
      EXPECT_TRUE(radical_membership(f, I));
    }
    if (!f.is_zero()) {
      EXPECT_TRUE(radical_membership(f, IdealPresentation(r, {f.pow(3)})));
    }
  }
}

TEST(Elimination, Examples) {
  auto r = make_ring({"x", "y", "u"});
  auto e1 = elimination(ideal(r, {"x-u", "y-u^2"}), {"x", "y"});
  auto kept = e1.ring();
  EXPECT_EQ(kept->names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(e1, IdealPresentation(kept, {P(kept, "y - x^2")}));
  auto r2 = make_ring({"x", "u"});
  EXPECT_TRUE(elimination(ideal(r2, {"x-u"}), {"x"}).groebner_basis().generators().empty());
  auto e3 = elimination(ideal(r, {"x-u", "y-u"}), {"x", "y"});
  EXPECT_EQ(e3, IdealPresentation(e3.ring(), {P(e3.ring(), "x - y")}));
}

// Implicit equation of a cubic parametrisation: a single block order over
// Q swells badly here, the homogenized run does not.
TEST(Elimination, ImplicitSurface) {
  auto r = make_ring({"a", "b", "x", "y", "z"});
  auto e = elimination(ideal(r, {"x + 2*b^3 + 4*b + 5", "y - 5*a^2*b - 4*a*b - 4*a", "z - a^3 - 4*a^2*b - 2*a*b"}),
                       {"x", "y", "z"});
  const auto& gens = e.groebner_basis().generators();
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0].total_degree(), 9);
  EXPECT_EQ(gens[0].terms().size(), 114u);
  auto ab = make_ring({"a", "b"});
  std::vector<Polynomial> param{P(ab, "-2*b^3 - 4*b - 5"), P(ab, "5*a^2*b + 4*a*b + 4*a"), P(ab, "a^3 + 4*a^2*b + 2*a*b")};
  EXPECT_TRUE(gens[0].substitute(param, ab).is_zero());
}

TEST(Elimination, UnitIdeal) {
  auto r = make_ring({"x", "u"});
  EXPECT_TRUE(elimination(ideal(r, {"x - u", "x - u - 1"}), {"x"}).is_unit());
}

TEST(Dimension, Examples) {
  auto r3 = make_ring({"a", "b", "c"});
  EXPECT_EQ(dimension(IdealPresentation(r3)), 3u);
  auto r = uv();
  EXPECT_EQ(dimension(ideal(r, {"u", "v"})), 0u);
  EXPECT_EQ(dimension(ideal(r, {"v - u^2"})), 1u);
  EXPECT_EQ(dimension(ideal(r3, {"a*b", "a*c"})), 2u);
  EXPECT_THROW(dimension(ideal(r, {"u", "u - 1"})), domain_error);
}

TEST(Saturation, Examples) {
  auto r = uv();
  EXPECT_EQ(saturation(ideal(r, {"u*v"}), P(r, "v")), ideal(r, {"u"}));
  EXPECT_TRUE(saturation(ideal(r, {"u"}), P(r, "u")).is_unit());
  EXPECT_TRUE(saturation(ideal(r, {"u^2*v^3"}), P(r, "u*v")).is_unit());
  EXPECT_EQ(quotient(ideal(r, {"u^2", "u*v"}), P(r, "u")), ideal(r, {"u", "v"}));
}

TEST(Saturation, Idempotent) {
  Gen g(25);
  auto r = uv();
  for (int i = 0; i < 25; ++i) {
    IdealPresentation I(r, {g.polynomial(r, 3, 3), g.polynomial(r, 3, 2)});
    auto f = g.polynomial(r, 2, 2);
    if (f.is_zero() || I.is_zero_ideal()) continue;
    auto once = saturation(I, f);
    EXPECT_EQ(saturation(once, f), once);
    EXPECT_TRUE(once.contains(I));
  }
}

TEST(Intersection, MonomialCase) {
  auto r = uv();
  EXPECT_EQ(intersection(ideal(r, {"u"}), ideal(r, {"v"})), ideal(r, {"u*v"}));
  EXPECT_EQ(intersection(ideal(r, {"u^2", "v"}), ideal(r, {"u", "v^2"})), ideal(r, {"u^2", "u*v", "v^2"}));
}

TEST(PrincipalMonomial, Examples) {
  auto e = make_ring({"u1", "u2", "v1"});
  std::vector<Rational> origin{0, 0, 0};
  auto c1 = is_principal_monomial_at(ideal(e, {"2*u1^3*u2^3"}), origin, {0, 1});
  ASSERT_TRUE(c1);
  EXPECT_EQ(c1->generator_monomial.to_vector(), (std::vector<Exponent>{3, 3, 0}));
  EXPECT_NE(c1->residual_witness.evaluate(origin), 0);

  auto c2 = is_principal_monomial_at(ideal(e, {"3", "4", "8"}), std::vector<Rational>{5, -1, 2}, {0, 1});
  ASSERT_TRUE(c2);
  EXPECT_TRUE(c2->generator_monomial.is_one());

  auto r = uv();
  std::vector<Rational> o2{0, 0};
  EXPECT_FALSE(is_principal_monomial_at(ideal(r, {"v"}), o2, {0}));
  EXPECT_THROW(is_principal_monomial_at(IdealPresentation(r), o2, {0}), domain_error);
}

TEST(PrincipalMonomial, LocalBehaviour) {
  auto r = uv();
  // (u^2, u*v) is u*(u, v): principal away from the origin only.
  auto I = ideal(r, {"u^2", "u*v"});
  EXPECT_FALSE(is_principal_monomial_at(I, std::vector<Rational>{0, 0}, {0, 1}));
  auto c = is_principal_monomial_at(I, std::vector<Rational>{0, 1}, {0, 1});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->generator_monomial.to_vector(), (std::vector<Exponent>{1, 0}));
  // u*(1 + v) is u times a unit at the origin.
  EXPECT_TRUE(is_principal_monomial_at(ideal(r, {"u + u*v"}), std::vector<Rational>{0, 0}, {0}));
  EXPECT_FALSE(is_principal_monomial_at(ideal(r, {"u + u*v"}), std::vector<Rational>{0, -1}, {0}));
}

TEST(IdealPresentation, CacheIsSharedAndRaceFree) {
  auto r = make_ring({"a", "b", "c"});
  auto I = ideal(r, {"a^2*b - c", "b^2 - a*c", "c^2 - a"});
  std::vector<IdealPresentation> copies(8, I);
  std::vector<std::thread> threads;
  std::vector<std::size_t> sizes(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { sizes[t] = copies[t].basis().elements.size(); });
  for (auto& th : threads) th.join();
  for (auto s : sizes) EXPECT_EQ(s, sizes.front());
  EXPECT_EQ(&copies[0].basis(), &I.basis());
  for (const auto& g : I.groebner_basis().generators()) EXPECT_TRUE(IdealPresentation(r, I.generators()).contains(g));
}
