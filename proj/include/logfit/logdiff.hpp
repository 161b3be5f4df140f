#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "logfit/chart.hpp"
#include "logfit/matrix.hpp"

namespace logfit {

/// Index of a log basis k-form du_I/u_I ^ dv_J. Entries are chart variable
/// indices; I holds divisor variables, J free ones, both ascending.
struct LogBasisIndex {
  std::vector<std::size_t> divisorial;
  std::vector<std::size_t> free;

  std::size_t degree() const noexcept { return divisorial.size() + free.size(); }

  friend bool operator<(const LogBasisIndex& a, const LogBasisIndex& b) {
    return std::tie(a.divisorial, a.free) < std::tie(b.divisorial, b.free);
  }
  friend bool operator==(const LogBasisIndex& a, const LogBasisIndex& b) {
    return a.divisorial == b.divisorial && a.free == b.free;
  }
};

inline std::string basis_to_string(const LogBasisIndex& idx, const Ring& ring) {
  std::string s;
  auto wedge = [&](const std::string& piece) {
    if (!s.empty()) s += "^";
    s += piece;
  };
  for (auto i : idx.divisorial) wedge("d" + ring.name(i) + "/" + ring.name(i));
  for (auto j : idx.free) wedge("d" + ring.name(j));
  return s.empty() ? "1" : s;
}

/// Logarithmic k-form in the basis of a chart; zero coefficients omitted.
struct LogKForm {
  std::size_t degree = 0;
  std::map<LogBasisIndex, Polynomial> coefficients;

  Polynomial coefficient(const LogBasisIndex& idx, const RingPtr& ring) const {
    auto it = coefficients.find(idx);
    return it == coefficients.end() ? Polynomial(ring) : it->second;
  }

  std::string to_string(const Ring& ring) const {
    if (coefficients.empty()) return "0";
    std::string s;
    for (const auto& [idx, c] : coefficients) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + basis_to_string(idx, ring);
    }
    return s;
  }
};

/// Source log basis positions: divisor variables first, then free ones.
inline std::vector<std::size_t> log_basis_order(const ChartedPair& chart) {
  auto order = chart.divisor_vars();
  auto f = chart.free_vars();
  order.insert(order.end(), f.begin(), f.end());
  return order;
}

/// Coefficients of df in the log basis: u_i * df/du_i, then df/dv_j.
inline std::vector<Polynomial> log_row(const Polynomial& f, const ChartedPair& chart) {
  if (!same_ring(f.ring(), chart.ring())) throw ambient_mismatch("polynomial outside the chart ring");
  std::vector<Polynomial> row;
  for (auto i : log_basis_order(chart)) {
    Polynomial d = f.partial_derivative(i);
    if (chart.is_divisor(i)) d = d.mul_term(Monomial::variable(chart.dimension(), i), 1);
    row.push_back(std::move(d));
  }
  return row;
}

inline LogKForm log_differential(const Polynomial& f, const ChartedPair& chart) {
  LogKForm form{1, {}};
  auto order = log_basis_order(chart);
  auto row = log_row(f, chart);
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (row[p].is_zero()) continue;
    LogBasisIndex idx;
    (chart.is_divisor(order[p]) ? idx.divisorial : idx.free).push_back(order[p]);
    form.coefficients.emplace(idx, row[p]);
  }
  return form;
}

/// Row of Phi^*(dx_i/x_i) (divisorial x_i) or Phi^*(dy_i) in the source log
/// basis. Divisorial rows are divided exactly by Phi_i.
inline std::vector<Polynomial> pulled_log_row(const MorphismOfPairs& phi, std::size_t target_var) {
  const auto& comp = phi.component(target_var);
  auto row = log_row(comp, phi.source());
  if (!phi.target().is_divisor(target_var)) return row;
  const auto& name = phi.target().ring()->name(target_var);
  if (comp.is_zero()) throw not_a_morphism_of_pairs("divisorial component " + name + " pulls back to 0");
  for (auto& e : row) {
    auto q = e.divide_exact(comp);
    if (!q) throw not_a_morphism_of_pairs("d" + name + "/" + name + " has a pole: " + comp.to_string() +
                                          " is not a monomial in the divisor variables");
    e = *std::move(q);
  }
  return row;
}

/// N x n log-Jacobian matrix over the source log basis.
inline PolyMatrix log_jacobian(const MorphismOfPairs& phi) {
  PolyMatrix m;
  for (std::size_t i = 0; i < phi.target_dim(); ++i) m.push_back(pulled_log_row(phi, i));
  return m;
}

/// Phi^*(dx_I/x_I ^ dy_J), wedge factors taken in the given order.
inline LogKForm pullback_basis_form(const MorphismOfPairs& phi, const std::vector<std::size_t>& target_divisorial,
                                    const std::vector<std::size_t>& target_free) {
  const std::size_t k = target_divisorial.size() + target_free.size();
  if (k == 0) throw domain_error("pullback of a 0-form basis element is not defined here");
  std::vector<std::size_t> rows = target_divisorial;
  rows.insert(rows.end(), target_free.begin(), target_free.end());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a] >= phi.target_dim()) throw domain_error("target variable index out of range");
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      if (rows[a] == rows[b]) throw domain_error("repeated factor in a basis form");
  }
  for (auto i : target_divisorial)
    if (!phi.target().is_divisor(i)) throw domain_error("dx/x factor on a free target variable");
  for (auto j : target_free)
    if (phi.target().is_divisor(j)) throw domain_error("dy factor on a divisorial target variable");

  PolyMatrix m;
  for (auto r : rows) m.push_back(pulled_log_row(phi, r));
  const auto order = log_basis_order(phi.source());
  LogKForm form{k, {}};
  std::vector<std::size_t> row_ids(k);
  for (std::size_t i = 0; i < k; ++i) row_ids[i] = i;
  for (const auto& cols : subsets(order.size(), k)) {
    Polynomial c = minor(m, row_ids, cols, phi.source().ring());
    if (c.is_zero()) continue;
    LogBasisIndex idx;
    for (auto p : cols) (phi.source().is_divisor(order[p]) ? idx.divisorial : idx.free).push_back(order[p]);
    form.coefficients.emplace(std::move(idx), std::move(c));
  }
  return form;
}

/// Target log basis k-forms in lexicographic (I, J) order.
inline std::vector<LogBasisIndex> log_basis(const ChartedPair& chart, std::size_t k) {
  auto div = chart.divisor_vars();
  auto fr = chart.free_vars();
  std::vector<LogBasisIndex> out;
  for (std::size_t l = 0; l <= std::min(k, div.size()); ++l) {
    if (k - l > fr.size()) continue;
    for (const auto& is : subsets(div.size(), l))
      for (const auto& js : subsets(fr.size(), k - l)) {
        LogBasisIndex idx;
        for (auto p : is) idx.divisorial.push_back(div[p]);
        for (auto p : js) idx.free.push_back(fr[p]);
        out.push_back(std::move(idx));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Composition psi o phi; phi's target chart must be psi's source chart.
inline MorphismOfPairs compose(const MorphismOfPairs& psi, const MorphismOfPairs& phi) {
  if (!same_ring(psi.source().ring(), phi.target().ring())) throw ambient_mismatch("composition of non-composable maps");
  std::vector<Polynomial> comps;
  for (const auto& c : psi.components()) comps.push_back(phi.pullback(c));
  return MorphismOfPairs(phi.source(), psi.target(), std::move(comps));
}

}  // namespace logfit
