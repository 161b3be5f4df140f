#include <gtest/gtest.h>

#include "support.hpp"

using namespace logfit;
using testing_support::Gen;
using testing_support::morphism;
using testing_support::P;

namespace {

LogBasisIndex idx(std::vector<std::size_t> d, std::vector<std::size_t> f) { return {std::move(d), std::move(f)}; }

IdealPresentation ideal_of(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> g;
  for (const auto& s : gens) g.push_back(P(r, s));
  return IdealPresentation(r, g);
}

// Valid morphism of pairs with a random shape: divisorial components are
// c*u^alpha, free components arbitrary polynomials.
MorphismOfPairs random_pair_morphism(Gen& g) {
  ChartedPair src({"u1", "u2", "v"}, {"u1", "u2"});
  bool two_divisorial = g.coin();
  ChartedPair tgt = two_divisorial ? ChartedPair({"x", "y"}, {"x", "y"}) : ChartedPair({"x", "y"}, {"x"});
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < 2; ++i) {
    if (tgt.is_divisor(i)) {
      comps.push_back(Polynomial::monomial(src.ring(), g.support_monomial(3, {0, 1}, 0, 3), g.integer(1, 3)));
    } else {
      comps.push_back(g.polynomial(src.ring(), 3, 3));
    }
  }
  return MorphismOfPairs(src, tgt, comps);
}

// Phi^*(basis form) via ordinary Jacobian minors (Laplace), scaled into the
// log basis and divided by the product of divisorial components.
LogKForm minor_oracle(const MorphismOfPairs& phi, const std::vector<std::size_t>& rows) {
  const auto& src = phi.source();
  const auto& ring = src.ring();
  auto order = log_basis_order(src);
  Polynomial denom = Polynomial::constant(ring, 1);
  for (auto r : rows)
    if (phi.target().is_divisor(r)) denom *= phi.component(r);
  LogKForm out{rows.size(), {}};
  for (const auto& cols : subsets(order.size(), rows.size())) {
    std::vector<std::vector<Polynomial>> m;
    for (auto r : rows) {
      std::vector<Polynomial> row;
      for (auto c : cols) row.push_back(phi.component(r).partial_derivative(order[c]));
      m.push_back(std::move(row));
    }
    Polynomial c = testing_support::laplace_determinant(m, ring);
    LogBasisIndex id;
    for (auto p : cols) {
      if (src.is_divisor(order[p])) {
        c *= Polynomial::variable(ring, order[p]);
        id.divisorial.push_back(order[p]);
      } else {
        id.free.push_back(order[p]);
      }
    }
    if (c.is_zero()) continue;
    auto q = c.divide_exact(denom);
    if (!q) throw std::logic_error("oracle division failed");
    out.coefficients.emplace(std::move(id), *q);
  }
  return out;
}

}  // namespace

TEST(LogDifferential, Examples) {
  ChartedPair X({"u1", "u2", "v1"}, {"u1", "u2"});
  const auto& r = X.ring();
  auto w = log_differential(P(r, "u1^2*u2^2"), X);
  EXPECT_EQ(w.coefficients.size(), 2u);
  EXPECT_EQ(w.coefficient(idx({0}, {}), r), P(r, "2*u1^2*u2^2"));
  EXPECT_EQ(w.coefficient(idx({1}, {}), r), P(r, "2*u1^2*u2^2"));

  auto dv = log_differential(P(r, "v1"), X);
  EXPECT_EQ(dv.coefficients.size(), 1u);
  EXPECT_EQ(dv.coefficient(idx({}, {2}), r), P(r, "1"));

  auto e1 = log_differential(P(r, "u1*u2 + u1^3*u2^3*v1"), X);
  EXPECT_EQ(e1.coefficient(idx({0}, {}), r), P(r, "u1*u2 + 3*u1^3*u2^3*v1"));
  EXPECT_EQ(e1.coefficient(idx({1}, {}), r), P(r, "u1*u2 + 3*u1^3*u2^3*v1"));
  EXPECT_EQ(e1.coefficient(idx({}, {2}), r), P(r, "u1^3*u2^3"));
}

TEST(PullbackBasisForm, PaperExamples) {
  auto e1 = testing_support::example1();
  const auto& r1 = e1.source().ring();
  auto f1 = pullback_basis_form(e1, {0}, {1});
  EXPECT_EQ(f1.coefficients.size(), 2u);
  EXPECT_TRUE(f1.coefficient(idx({0, 1}, {}), r1).is_zero());
  EXPECT_EQ(f1.coefficient(idx({0}, {2}), r1), P(r1, "2*u1^3*u2^3"));
  EXPECT_EQ(f1.coefficient(idx({1}, {2}), r1), P(r1, "2*u1^3*u2^3"));

  auto e2 = testing_support::example2();
  const auto& r2 = e2.source().ring();
  auto f2 = pullback_basis_form(e2, {0}, {1});
  EXPECT_EQ(f2.coefficients.size(), 1u);
  EXPECT_EQ(f2.coefficient(idx({0, 1}, {}), r2), P(r2, "2*u1^2*u2^3"));

  auto e3 = testing_support::example3();
  const auto& r3 = e3.source().ring();
  auto f3 = pullback_basis_form(e3, {0, 1}, {});
  EXPECT_EQ(f3.coefficient(idx({0, 1}, {}), r3), P(r3, "3"));
  EXPECT_EQ(f3.coefficient(idx({0, 2}, {}), r3), P(r3, "4"));
  EXPECT_EQ(f3.coefficient(idx({1, 2}, {}), r3), P(r3, "8"));
}

TEST(PullbackBasisForm, Preconditions) {
  auto e1 = testing_support::example1();
  EXPECT_THROW(pullback_basis_form(e1, {}, {}), domain_error);
  EXPECT_THROW(pullback_basis_form(e1, {1}, {}), domain_error);
  EXPECT_THROW(pullback_basis_form(e1, {}, {0}), domain_error);
  EXPECT_THROW(pullback_basis_form(e1, {0, 0}, {}), domain_error);
  ChartedPair src({"u", "v"}, {"u"});
  ChartedPair tgt({"x"}, {"x"});
  EXPECT_THROW(pullback_basis_form(morphism(src, tgt, {"u*(1+v)"}), {0}, {}), not_a_morphism_of_pairs);
  EXPECT_THROW(log_jacobian(morphism(src, tgt, {"u+v"})), not_a_morphism_of_pairs);
  EXPECT_THROW(log_jacobian(morphism(src, tgt, {"0"})), not_a_morphism_of_pairs);
}

TEST(LogJacobian, Examples) {
  ChartedPair src({"u", "v"}, {"u"});
  const auto& r = src.ring();
  auto one = log_jacobian(morphism(ChartedPair({"u"}, {"u"}), ChartedPair({"x"}, {"x"}), {"u"}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0][0].to_string(), "1");

  auto m = log_jacobian(morphism(src, ChartedPair({"x", "y"}, {"x"}), {"u", "u*v"}));
  EXPECT_EQ(m[0][0], P(r, "1"));
  EXPECT_TRUE(m[0][1].is_zero());
  EXPECT_EQ(m[1][0], P(r, "u*v"));
  EXPECT_EQ(m[1][1], P(r, "u"));

  auto e3 = log_jacobian(testing_support::example3());
  std::vector<std::vector<std::string>> want{{"1", "2", "0"}, {"0", "3", "4"}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(e3[i][j].to_string(), want[i][j]);
}

TEST(LogDiffProperties, AgreesWithMinorOracle) {
  Gen g(41);
  for (int i = 0; i < 80; ++i) {
    auto phi = random_pair_morphism(g);
    for (std::size_t k = 1; k <= 2; ++k)
      for (const auto& b : log_basis(phi.target(), k)) {
        auto got = pullback_basis_form(phi, b.divisorial, b.free);
        std::vector<std::size_t> rows = b.divisorial;
        rows.insert(rows.end(), b.free.begin(), b.free.end());
        auto want = minor_oracle(phi, rows);
        EXPECT_EQ(got.coefficients, want.coefficients) << got.to_string(*phi.source().ring());
      }
  }
}

TEST(LogDiffProperties, Antisymmetry) {
  Gen g(42);
  for (int i = 0; i < 50; ++i) {
    auto phi = random_pair_morphism(g);
    if (!phi.target().is_divisor(1)) continue;
    auto a = pullback_basis_form(phi, {0, 1}, {});
    auto b = pullback_basis_form(phi, {1, 0}, {});
    ASSERT_EQ(a.coefficients.size(), b.coefficients.size());
    for (const auto& [id, c] : a.coefficients) EXPECT_EQ(b.coefficient(id, phi.source().ring()), Rational(-1) * c);
  }
}

TEST(LogDiffProperties, DegreeOneMatchesJacobianRow) {
  Gen g(43);
  for (int i = 0; i < 60; ++i) {
    auto phi = random_pair_morphism(g);
    auto jac = log_jacobian(phi);
    auto order = log_basis_order(phi.source());
    for (std::size_t t = 0; t < 2; ++t) {
      auto form = phi.target().is_divisor(t) ? pullback_basis_form(phi, {t}, {}) : pullback_basis_form(phi, {}, {t});
      for (std::size_t c = 0; c < order.size(); ++c) {
        auto id = phi.source().is_divisor(order[c]) ? idx({order[c]}, {}) : idx({}, {order[c]});
        EXPECT_EQ(form.coefficient(id, phi.source().ring()), jac[t][c]);
      }
    }
  }
}

TEST(LogDiffProperties, MonomialRowsAreExponents) {
  Gen g(44);
  for (int i = 0; i < 60; ++i) {
    auto phi = testing_support::random_monomial_morphism(g, 4);
    auto jac = log_jacobian(phi);
    for (std::size_t t = 0; t < 2; ++t) {
      if (!phi.target().is_divisor(t)) continue;
      auto alpha = phi.component(t).terms().front().mono;
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(jac[t][c], Polynomial::constant(phi.source().ring(), alpha[c]));
    }
  }
}

// Chain rule in the log basis: LJ(psi o phi) = phi^*(LJ(psi)) * LJ(phi).
TEST(LogDiffProperties, Functoriality) {
  Gen g(45);
  ChartedPair Z({"p", "q"}, {"p"});
  for (int i = 0; i < 40; ++i) {
    auto phi = random_pair_morphism(g);
    const auto& Y = phi.target();
    std::vector<Polynomial> psi_comps;
    Monomial a(2);
    for (auto d : Y.divisor_vars()) a[d] = static_cast<Exponent>(g.integer(0, 2));
    psi_comps.push_back(Polynomial::monomial(Y.ring(), a, g.integer(1, 2)));
    psi_comps.push_back(g.polynomial(Y.ring(), 2, 3));
    MorphismOfPairs psi(Y, Z, psi_comps);
    auto lhs = log_jacobian(compose(psi, phi));
    auto outer = log_jacobian(psi);
    auto inner = log_jacobian(phi);
    const auto& r = phi.source().ring();
    for (std::size_t row = 0; row < 2; ++row)
      for (std::size_t col = 0; col < 3; ++col) {
        Polynomial acc(r);
        for (std::size_t mid = 0; mid < 2; ++mid) acc += phi.pullback(outer[row][mid]) * inner[mid][col];
        EXPECT_EQ(lhs[row][col], acc);
      }
  }
}

TEST(Fitting, PaperExamples) {
  auto e1 = testing_support::example1();
  auto e2 = testing_support::example2();
  auto e3 = testing_support::example3();
  EXPECT_EQ(top_form_degree(e1), 2u);
  EXPECT_EQ(log_fitting_ideal(e1, 2), ideal_of(e1.source().ring(), {"u1^3*u2^3"}));
  EXPECT_EQ(log_fitting_ideal(e2, 2), ideal_of(e2.source().ring(), {"u1^2*u2^3"}));
  auto f3 = log_fitting_ideal(e3, 2);
  EXPECT_TRUE(f3.is_unit());
  EXPECT_EQ(f3.generators().size(), 3u);
  EXPECT_EQ(fitting_label(3, 2), "F_1");
  EXPECT_THROW(log_fitting_ideal(e1, 0), domain_error);
  EXPECT_THROW(log_fitting_ideal(e1, 3), domain_error);
}

TEST(Fitting, VanishingInDivisor) {
  EXPECT_TRUE(fitting_vanishing_in_divisor(testing_support::example1(), 2));
  EXPECT_TRUE(fitting_vanishing_in_divisor(testing_support::example3(), 2));
  auto sq = morphism(ChartedPair({"u", "v"}, {"u"}), ChartedPair({"x", "y"}, {"x"}), {"u^2", "v^2"});
  EXPECT_EQ(log_fitting_ideal(sq, 2), ideal_of(sq.source().ring(), {"v"}));
  EXPECT_FALSE(fitting_vanishing_in_divisor(sq, 2));
}

TEST(FittingProperties, Nesting) {
  Gen g(46);
  for (int i = 0; i < 50; ++i) {
    auto phi = random_pair_morphism(g);
    EXPECT_TRUE(log_fitting_ideal(phi, 1).contains(log_fitting_ideal(phi, 2)));
  }
}

// For c*u^alpha components the log-Jacobian is c'*u^beta times the exponent
// matrix row by row, so each k-minor is an integer times a monomial.
TEST(FittingProperties, MonomialMinorsOracle) {
  Gen g(47);
  for (int i = 0; i < 60; ++i) {
    auto phi = testing_support::random_monomial_morphism(g, 3);
    const auto& r = phi.source().ring();
    std::vector<std::vector<Rational>> expo;
    std::vector<Monomial> scale;
    for (std::size_t t = 0; t < 2; ++t) {
      const auto& term = phi.component(t).terms().front();
      std::vector<Rational> row;
      for (std::size_t c = 0; c < 3; ++c) row.emplace_back(term.mono[c]);
      expo.push_back(row);
      scale.push_back(phi.target().is_divisor(t) ? Monomial(3) : term.mono);
    }
    for (std::size_t k = 1; k <= 2; ++k) {
      std::vector<Polynomial> gens;
      for (const auto& rows : subsets(2, k))
        for (const auto& cols : subsets(3, k)) {
          std::vector<std::vector<Rational>> sub;
          for (auto a : rows) {
            std::vector<Rational> row;
            for (auto b : cols) row.push_back(expo[a][b]);
            sub.push_back(row);
          }
          Rational det = k == 1 ? sub[0][0] : sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0];
          Monomial m(3);
          for (auto a : rows) m = m * scale[a];
          // free columns carry no u-factor in the log basis but lose one v
          for (auto b : cols)
            if (b == 2) {
              if (m[2] == 0) det = 0;
              else m[2] -= 1;
            }
          if (det != 0) gens.push_back(Polynomial::monomial(r, m, det));
        }
      EXPECT_EQ(log_fitting_ideal(phi, k), IdealPresentation(r, gens)) << k;
    }
  }
}
