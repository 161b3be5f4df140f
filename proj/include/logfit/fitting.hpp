#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "logfit/ideal.hpp"
#include "logfit/logdiff.hpp"

namespace logfit {

/// Name of the log-Fitting ideal built from pulled-back k-forms: F_{n-k}.
inline std::string fitting_label(std::size_t source_dim, std::size_t k) {
  return "F_" + std::to_string(source_dim - k);
}

/// Top form degree min(n, N); its ideal is the one the strong-preparation
/// criterion for surface targets uses.
inline std::size_t top_form_degree(const MorphismOfPairs& phi) {
  return std::min(phi.source_dim(), phi.target_dim());
}

/// Ideal generated by every coefficient of Phi^* of every target log basis k-form.
inline IdealPresentation log_fitting_ideal(const MorphismOfPairs& phi, std::size_t k) {
  if (k < 1 || k > top_form_degree(phi))
    throw domain_error("form degree k=" + std::to_string(k) + " outside 1.." + std::to_string(top_form_degree(phi)));
  std::vector<Polynomial> gens;
  for (const auto& idx : log_basis(phi.target(), k)) {
    auto form = pullback_basis_form(phi, idx.divisorial, idx.free);
    for (auto& [_, c] : form.coefficients) gens.push_back(c);
  }
  return IdealPresentation(phi.source().ring(), gens);
}

/// V(F_{n-k}) in E, i.e. u_1...u_s in rad(F_{n-k}).
inline bool fitting_vanishing_in_divisor(const MorphismOfPairs& phi, std::size_t k) {
  return radical_membership(phi.source().divisor_product(), log_fitting_ideal(phi, k));
}

}  // namespace logfit
