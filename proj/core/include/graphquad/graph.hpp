#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace graphquad {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

/// Finite undirected graph with symmetric nonnegative edge weights.
/// Immutable after construction. Neighbor lists are sorted by vertex id and
/// every iteration order is fixed, so downstream results are reproducible
/// bit for bit.
class WeightedGraph {
 public:
  struct Neighbor {
    int id = 0;
    double weight = 0.0;
  };

  /// Validates and canonicalizes an edge list.
  ///
  /// Rejected: out-of-range ids, self-loops, duplicate undirected pairs,
  /// negative or non-finite weights, and graphs with n >= 2 whose weights are
  /// all zero. Zero-weight edges are accepted in the input but dropped; they
  /// contribute nothing to the adjacency matrix or to connectivity.
  /// A single-vertex graph (n = 1, no edges) is allowed.
  static WeightedGraph from_edge_list(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Canonical edge list: u < v, sorted lexicographically, positive weights only.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Neighbor> neighbors(int v) const;

  /// Row sum of the adjacency matrix at v.
  double weighted_degree(int v) const { return degree_[v]; }

  /// d_max: the maximum weighted degree, computed exactly once at
  /// construction. Zero only for the single-vertex graph.
  double max_degree() const { return d_max_; }

  /// Breadth-first reachability; zero-weight edges were already dropped.
  bool is_connected() const;

 private:
  WeightedGraph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> degree_;
  double d_max_ = 0.0;
};

/// Validates a vertex subset against an n-vertex graph and returns it sorted
/// ascending. Throws on empty input, out-of-range ids, or duplicates.
std::vector<int> canonical_vertex_set(std::span<const int> vertices, int n);

/// The diffusion operator P = Id + L with L = A' - D', where A' = A / d_max
/// and D' is the corresponding diagonal degree matrix. P is symmetric and
/// stochastic; applying it never materializes a dense matrix.
class DiffusionOperator {
 public:
  explicit DiffusionOperator(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }
  int size() const { return graph_.vertex_count(); }
  double d_max() const { return graph_.max_degree(); }

  /// D'_vv in [0, 1]; equals 1 for at least one vertex.
  double normalized_degree(int v) const { return normalized_degree_[v]; }

  /// One sparse pass over the edges plus a diagonal pass.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// P^steps x via repeated application.
  Eigen::VectorXd apply_power(Eigen::VectorXd x, int steps) const;

  /// Dense P for small-n eigendecomposition and verification.
  Eigen::MatrixXd dense() const;

 private:
  WeightedGraph graph_;
  std::vector<double> normalized_degree_;
  double inv_d_max_ = 0.0;
};

}  // namespace graphquad
