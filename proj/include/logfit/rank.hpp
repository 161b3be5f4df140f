#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "logfit/chart.hpp"
#include "logfit/ideal.hpp"
#include "logfit/logdiff.hpp"
#include "logfit/matrix.hpp"

namespace logfit {

/// N x n matrix of partial derivatives, columns in chart variable order.
inline PolyMatrix jacobian_matrix(const MorphismOfPairs& phi) {
  PolyMatrix m;
  for (const auto& c : phi.components()) {
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < phi.source_dim(); ++j) row.push_back(c.partial_derivative(j));
    m.push_back(std::move(row));
  }
  return m;
}

inline std::size_t rank_at_point(const MorphismOfPairs& phi, const RationalPoint& a) {
  if (a.size() != phi.source_dim()) throw domain_error("point does not belong to the source chart");
  return rational_rank(evaluate(jacobian_matrix(phi), a.span()));
}

/// Rank of the Jacobian over the function field of the source chart.
inline std::size_t geometric_rank(const MorphismOfPairs& phi) { return symbolic_rank(jacobian_matrix(phi)); }

inline std::size_t log_rank_at_point(const MorphismOfPairs& phi, const RationalPoint& a) {
  if (a.size() != phi.source_dim()) throw domain_error("point does not belong to the source chart");
  return rational_rank(evaluate(log_jacobian(phi), a.span()));
}

/// Jacobian of Phi restricted to the stratum {u_d = 0 : d in D}: the D
/// variables are set to zero and their columns dropped.
inline PolyMatrix restricted_jacobian(const MorphismOfPairs& phi, const std::vector<std::size_t>& stratum) {
  const auto& ring = phi.source().ring();
  std::vector<bool> zeroed(phi.source_dim(), false);
  for (auto d : stratum) {
    if (!phi.source().is_divisor(d)) throw domain_error("stratum variable " + ring->name(d) + " is not divisorial");
    zeroed[d] = true;
  }
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < phi.source_dim(); ++i)
    images.push_back(zeroed[i] ? Polynomial(ring) : Polynomial::variable(ring, i));
  PolyMatrix m;
  for (const auto& c : phi.components()) {
    Polynomial r = c.substitute(images, ring);
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < phi.source_dim(); ++j)
      if (!zeroed[j]) row.push_back(r.partial_derivative(j));
    m.push_back(std::move(row));
  }
  return m;
}

inline std::size_t restricted_geometric_rank(const MorphismOfPairs& phi, const std::vector<std::size_t>& stratum) {
  return symbolic_rank(restricted_jacobian(phi, stratum));
}

/// Graph ideal (y_i - Phi_i) in source + target variables. Target names
/// that collide with source names get a trailing underscore.
inline IdealPresentation graph_ideal(const MorphismOfPairs& phi, std::vector<std::string>* target_names = nullptr) {
  const auto& src = *phi.source().ring();
  std::vector<std::string> names = src.names();
  std::vector<std::string> tnames;
  for (const auto& t : phi.target().variables()) {
    std::string name = t;
    auto taken = [&](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
    while (taken(name)) name += "_";
    names.push_back(name);
    tnames.push_back(name);
  }
  auto ring = make_ring(names);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < phi.target_dim(); ++i)
    gens.push_back(Polynomial::variable(ring, src.size() + i) - phi.component(i).embed(ring));
  if (target_names) *target_names = tnames;
  return IdealPresentation(ring, gens);
}

/// Dimension of the Zariski closure of the image, via elimination.
inline std::size_t image_closure_dimension(const MorphismOfPairs& phi) {
  std::vector<std::string> tnames;
  auto graph = graph_ideal(phi, &tnames);
  return dimension(elimination(graph, tnames));
}

}  // namespace logfit
