#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphquad/graph.hpp"

namespace graphquad {

enum class Metric {
  kHop,            // unit length per edge (breadth-first distances)
  kInverseWeight,  // length 1/w per edge (Dijkstra)
};

/// Shortest-path distances with per-source memoization. Unreachable vertices
/// get +infinity and set a sticky flag. References the graph; keep the graph
/// alive for the oracle's lifetime. Not safe for concurrent mutation.
class DistanceOracle {
 public:
  DistanceOracle(const WeightedGraph& graph, Metric metric);

  const WeightedGraph& graph() const { return *graph_; }
  Metric metric() const { return metric_; }

  std::span<const double> sssp(int source) const;
  double distance(int u, int v) const { return sssp(u)[v]; }

  /// Σ_{i,j in W} d(v_i, v_j) over ordered pairs (twice the unordered sum).
  double total_mutual_distance(std::span<const int> vertices) const;

  /// True once any computed single-source array contained +infinity.
  bool saw_unreachable() const { return saw_unreachable_; }

 private:
  const WeightedGraph* graph_;
  Metric metric_;
  mutable std::vector<std::vector<double>> cache_;
  mutable std::vector<char> ready_;
  mutable bool saw_unreachable_ = false;
};

struct PlacementResult {
  std::vector<int> vertices;  // sorted ascending
  double objective = 0.0;
  int passes = 0;
  bool converged = false;        // a full pass made no move
  bool objective_finite = true;  // false when W spans disconnected components
  std::vector<double> objective_trace;  // objective after each accepted move
};

/// Local search maximizing the total mutual distance: start from a seeded
/// uniform random k-subset, scan points in index order and neighbors in
/// sorted-id order, and apply the first move that strictly increases the
/// objective (moves onto occupied vertices are skipped). Terminates when a
/// full pass makes no move or after max_passes.
PlacementResult local_search_placement(const DistanceOracle& oracle, int k, std::uint64_t seed,
                                       int max_passes = 1000);

}  // namespace graphquad
