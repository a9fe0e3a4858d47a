#include "graphquad/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

namespace graphquad {

WeightedGraph WeightedGraph::from_edge_list(int n, std::span<const Edge> edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");

  std::vector<Edge> kept;
  kept.reserve(edges.size());
  std::vector<std::pair<int, int>> seen;
  seen.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") has a vertex id outside [0," + std::to_string(n) + ")");
    if (e.u == e.v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") has a negative or non-finite weight");
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    if (e.weight > 0.0) kept.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("duplicate undirected edge in input");
  if (n >= 2 && kept.empty())
    throw std::invalid_argument("graph has no positive-weight edge, so d_max would be zero");

  std::sort(kept.begin(), kept.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });

  WeightedGraph g;
  g.n_ = n;
  g.edges_ = std::move(kept);

  std::vector<int> counts(n, 0);
  for (const Edge& e : g.edges_) {
    ++counts[e.u];
    ++counts[e.v];
  }
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + counts[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (int v = 0; v < n; ++v)
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });

  g.degree_.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    double sum = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) sum += nb.weight;
    g.degree_[v] = sum;
  }
  g.d_max_ = 0.0;
  for (int v = 0; v < n; ++v) g.d_max_ = std::max(g.d_max_, g.degree_[v]);
  return g;
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool WeightedGraph::is_connected() const {
  std::vector<char> visited(n_, 0);
  std::deque<int> queue{0};
  visited[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : neighbors(u)) {
      if (!visited[nb.id]) {
        visited[nb.id] = 1;
        ++reached;
        queue.push_back(nb.id);
      }
    }
  }
  return reached == n_;
}

std::vector<int> canonical_vertex_set(std::span<const int> vertices, int n) {
  if (vertices.empty()) throw std::invalid_argument("vertex set must be nonempty");
  std::vector<int> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n)
      throw std::invalid_argument("vertex id " + std::to_string(sorted[i]) + " out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate vertex id " + std::to_string(sorted[i]));
  }
  return sorted;
}

DiffusionOperator::DiffusionOperator(WeightedGraph graph) : graph_(std::move(graph)) {
  const int n = graph_.vertex_count();
  // d_max = 0 happens only for n = 1, where A - D vanishes and P = Id.
  inv_d_max_ = graph_.max_degree() > 0.0 ? 1.0 / graph_.max_degree() : 0.0;
  normalized_degree_.resize(n);
  for (int v = 0; v < n; ++v) normalized_degree_[v] = graph_.weighted_degree(v) * inv_d_max_;
}

Eigen::VectorXd DiffusionOperator::apply(const Eigen::VectorXd& x) const {
  const int n = size();
  if (x.size() != n) throw std::invalid_argument("vector length does not match vertex count");
  Eigen::VectorXd out(n);
  for (int v = 0; v < n; ++v) out[v] = (1.0 - normalized_degree_[v]) * x[v];
  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const WeightedGraph::Neighbor& nb : graph_.neighbors(v)) acc += nb.weight * x[nb.id];
    out[v] += inv_d_max_ * acc;
  }
  return out;
}

Eigen::VectorXd DiffusionOperator::apply_power(Eigen::VectorXd x, int steps) const {
  if (steps < 0) throw std::invalid_argument("number of diffusion steps must be nonnegative");
  if (x.size() != size()) throw std::invalid_argument("vector length does not match vertex count");
  for (int i = 0; i < steps; ++i) x = apply(x);
  return x;
}

Eigen::MatrixXd DiffusionOperator::dense() const {
  const int n = size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    p(v, v) = 1.0 - normalized_degree_[v];
    for (const WeightedGraph::Neighbor& nb : graph_.neighbors(v))
      p(v, nb.id) = nb.weight * inv_d_max_;
  }
  return p;
}

}  // namespace graphquad
