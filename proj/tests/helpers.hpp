#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "graphquad/builders.hpp"
#include "graphquad/graph.hpp"
#include "graphquad/rng.hpp"
#include "graphquad/weights.hpp"

namespace testutil {

inline Eigen::VectorXd dirac(int n, int v) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x[v] = 1.0;
  return x;
}

inline graphquad::QuadratureRule uniform_rule(std::vector<int> vertices) {
  const auto k = static_cast<Eigen::Index>(vertices.size());
  return {std::move(vertices), Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k))};
}

/// Random rule on k distinct vertices; nonneg draws normalized exponentials,
/// signed shifts a gaussian vector onto the sum-1 plane.
inline graphquad::QuadratureRule random_rule(graphquad::Rng& rng, int n, int k, bool nonneg) {
  std::vector<int> vertices = rng.sample_without_replacement(n, k);
  Eigen::VectorXd a(k);
  if (nonneg) {
    for (int i = 0; i < k; ++i) a[i] = -std::log(1.0 - rng.uniform01());
    a /= a.sum();
  } else {
    for (int i = 0; i < k; ++i) a[i] = rng.normal();
    a.array() += (1.0 - a.sum()) / k;
  }
  return {std::move(vertices), std::move(a)};
}

inline Eigen::VectorXd random_vector(graphquad::Rng& rng, int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.normal();
  return x;
}

/// Relabels vertices by the permutation perm (new id = perm[old id]).
inline graphquad::WeightedGraph permuted(const graphquad::WeightedGraph& g,
                                         const std::vector<int>& perm) {
  std::vector<graphquad::Edge> edges;
  for (const graphquad::Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
  return graphquad::WeightedGraph::from_edge_list(g.vertex_count(), edges);
}

}  // namespace testutil
