#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logfit/chart.hpp"

namespace logfit {

/// One affine chart of a coordinate blowup. Variables keep their names;
/// `substitution[i]` is the image of parent variable i.
struct BlowupChart {
  ChartedPair chart;
  std::size_t distinguished;
  std::vector<Polynomial> substitution;
};

struct BlowupStep {
  std::vector<std::size_t> center;
  ChartedPair parent;
  std::vector<BlowupChart> children;
};

/// Standard charts of the blowup of `X` along {w_i = 0 : i in center}.
/// Chart c: w_j -> w_c * w_j for the other center variables, and w_c joins
/// the divisor as the exceptional coordinate.
inline BlowupStep blowup_chart(const ChartedPair& X, std::vector<std::size_t> center) {
  if (center.size() < 2) throw domain_error("trivial blowup: the center needs at least two variables");
  std::sort(center.begin(), center.end());
  if (std::adjacent_find(center.begin(), center.end()) != center.end())
    throw domain_error("blowup center lists a variable twice");
  if (center.back() >= X.dimension()) throw domain_error("blowup center variable outside the chart");

  const auto& ring = X.ring();
  BlowupStep step{center, X, {}};
  for (auto c : center) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < X.dimension(); ++i) images.push_back(Polynomial::variable(ring, i));
    for (auto j : center)
      if (j != c) images[j] = images[j].mul_term(Monomial::variable(X.dimension(), c), 1);
    auto mask = X.divisor_mask();
    mask[c] = true;
    step.children.push_back({ChartedPair(ring, std::move(mask)), c, std::move(images)});
  }
  return step;
}

inline BlowupStep blowup_chart(const ChartedPair& X, const std::vector<std::string>& center_names) {
  std::vector<std::size_t> center;
  for (const auto& name : center_names) center.push_back(X.ring()->index(name));
  return blowup_chart(X, std::move(center));
}

struct TransformedMorphism {
  MorphismOfPairs morphism;
  Verdict pair_condition;
};

/// Phi o sigma on one child chart, with the pair condition re-checked.
inline TransformedMorphism transform_morphism(const MorphismOfPairs& phi, const BlowupStep& step, std::size_t child) {
  if (!(step.parent == phi.source())) throw ambient_mismatch("blowup step does not apply to the source chart");
  const auto& ch = step.children.at(child);
  std::vector<Polynomial> comps;
  for (const auto& c : phi.components()) comps.push_back(c.substitute(ch.substitution, ch.chart.ring()));
  MorphismOfPairs out(ch.chart, phi.target(), std::move(comps));
  auto verdict = validate_pair_condition(out);
  return {std::move(out), std::move(verdict)};
}

/// Tree of coordinate blowups over a root chart. Node 0 is the root.
class BlowupTree {
 public:
  struct Node {
    ChartedPair chart;
    std::optional<std::size_t> parent;
    std::size_t distinguished = 0;              // meaningful below the root
    std::vector<std::size_t> center;            // empty at leaves
    std::vector<std::size_t> children;
    std::vector<Polynomial> root_substitution;  // images of root variables
    std::size_t depth = 0;
  };

  explicit BlowupTree(ChartedPair root) {
    std::vector<Polynomial> id;
    for (std::size_t i = 0; i < root.dimension(); ++i) id.push_back(Polynomial::variable(root.ring(), i));
    nodes_.push_back(Node{std::move(root), std::nullopt, 0, {}, {}, std::move(id), 0});
  }

  const ChartedPair& root() const noexcept { return nodes_.front().chart; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty_tree() const noexcept { return nodes_.size() == 1; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
  }

  std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].children.empty()) out.push_back(i);
    return out;
  }

  /// Blows up a leaf; returns the new child ids in center order.
  std::vector<std::size_t> expand(std::size_t leaf, const std::vector<std::size_t>& center) {
    if (!nodes_.at(leaf).children.empty()) throw domain_error("node " + std::to_string(leaf) + " is already expanded");
    auto step = blowup_chart(nodes_[leaf].chart, center);
    std::vector<std::size_t> ids;
    for (auto& ch : step.children) {
      std::vector<Polynomial> to_root;
      for (const auto& p : nodes_[leaf].root_substitution) to_root.push_back(p.substitute(ch.substitution, ch.chart.ring()));
      ids.push_back(nodes_.size());
      nodes_.push_back(Node{std::move(ch.chart), leaf, ch.distinguished, {}, {}, std::move(to_root),
                            nodes_[leaf].depth + 1});
    }
    nodes_[leaf].center = step.center;
    nodes_[leaf].children = ids;
    return ids;
  }

  /// Phi composed with every blowup from the root down to `id`.
  MorphismOfPairs transform(const MorphismOfPairs& phi, std::size_t id) const {
    if (!(phi.source() == root())) throw ambient_mismatch("morphism source is not the tree root");
    const auto& n = nodes_.at(id);
    std::vector<Polynomial> comps;
    for (const auto& c : phi.components()) comps.push_back(c.substitute(n.root_substitution, n.chart.ring()));
    return MorphismOfPairs(n.chart, phi.target(), std::move(comps));
  }

 private:
  std::vector<Node> nodes_;
};

}  // namespace logfit
