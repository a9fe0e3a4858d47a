#include "graphquad/placement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

#include "graphquad/rng.hpp"

namespace graphquad {

DistanceOracle::DistanceOracle(const WeightedGraph& graph, Metric metric)
    : graph_(&graph), metric_(metric) {
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  cache_.resize(n);
  ready_.assign(n, 0);
}

std::span<const double> DistanceOracle::sssp(int source) const {
  const int n = graph_->vertex_count();
  if (source < 0 || source >= n) throw std::invalid_argument("source vertex out of range");
  if (ready_[source]) return cache_[source];

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  dist[source] = 0.0;
  if (metric_ == Metric::kHop) {
    std::deque<int> queue{source};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const WeightedGraph::Neighbor& nb : graph_->neighbors(u)) {
        if (dist[nb.id] == kInf) {
          dist[nb.id] = dist[u] + 1.0;
          queue.push_back(nb.id);
        }
      }
    }
  } else {
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const WeightedGraph::Neighbor& nb : graph_->neighbors(u)) {
        const double cand = d + 1.0 / nb.weight;
        if (cand < dist[nb.id]) {
          dist[nb.id] = cand;
          heap.emplace(cand, nb.id);
        }
      }
    }
  }
  for (double d : dist)
    if (d == kInf) {
      saw_unreachable_ = true;
      break;
    }
  cache_[source] = std::move(dist);
  ready_[source] = 1;
  return cache_[source];
}

double DistanceOracle::total_mutual_distance(std::span<const int> vertices) const {
  const std::vector<int> sorted = canonical_vertex_set(vertices, graph_->vertex_count());
  double total = 0.0;
  for (int u : sorted) {
    const std::span<const double> row = sssp(u);
    for (int v : sorted) total += row[v];
  }
  return total;
}

PlacementResult local_search_placement(const DistanceOracle& oracle, int k, std::uint64_t seed,
                                       int max_passes) {
  const int n = oracle.graph().vertex_count();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (max_passes < 1) throw std::invalid_argument("max_passes must be positive");

  Rng rng(seed);
  std::vector<int> current = rng.sample_without_replacement(n, k);
  std::vector<char> occupied(n, 0);
  for (int v : current) occupied[v] = 1;

  PlacementResult result;
  double objective = oracle.total_mutual_distance(current);
  result.objective_finite = std::isfinite(objective);

  for (int pass = 1; pass <= max_passes; ++pass) {
    result.passes = pass;
    bool moved_in_pass = false;
    for (int i = 0; i < k; ++i) {
      const int from = current[i];
      for (const WeightedGraph::Neighbor& nb : oracle.graph().neighbors(from)) {
        const int to = nb.id;
        if (occupied[to]) continue;
        double delta = 0.0;
        const std::span<const double> dist_to = oracle.sssp(to);
        const std::span<const double> dist_from = oracle.sssp(from);
        for (int j = 0; j < k; ++j) {
          if (j == i) continue;
          delta += dist_to[current[j]] - dist_from[current[j]];
        }
        delta *= 2.0;  // ordered pairs
        if (delta > 0.0) {
          occupied[from] = 0;
          occupied[to] = 1;
          current[i] = to;
          objective += delta;
          result.objective_trace.push_back(objective);
          moved_in_pass = true;
          break;  // first improvement for this point; continue with the next
        }
      }
    }
    if (!moved_in_pass) {
      result.converged = true;
      break;
    }
  }

  std::sort(current.begin(), current.end());
  result.vertices = std::move(current);
  result.objective = oracle.total_mutual_distance(result.vertices);
  result.objective_finite = std::isfinite(result.objective);
  return result;
}

}  // namespace graphquad
