#include "graphquad/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "graphquad/rng.hpp"

namespace graphquad {

namespace {

WeightedGraph from_unit_edges(int n, std::vector<Edge> edges) {
  for (Edge& e : edges) e.weight = 1.0;
  return WeightedGraph::from_edge_list(n, edges);
}

}  // namespace

WeightedGraph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return from_unit_edges(n, std::move(edges));
}

WeightedGraph gen_path(int n) {
  if (n < 2) throw std::invalid_argument("path needs at least 2 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return from_unit_edges(n, std::move(edges));
}

WeightedGraph gen_complete(int n) {
  if (n < 2) throw std::invalid_argument("complete graph needs at least 2 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return from_unit_edges(n, std::move(edges));
}

WeightedGraph gen_star(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least 1 leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return from_unit_edges(leaves + 1, std::move(edges));
}

WeightedGraph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("grid needs at least 2 vertices");
  std::vector<Edge> edges;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  return from_unit_edges(rows * cols, std::move(edges));
}

WeightedGraph gen_mcgee() {
  // 24-cycle plus chords, 1-based pairs as drawn around the circle.
  static constexpr std::pair<int, int> kChords[] = {
      {1, 8},  {2, 19},  {3, 15},  {4, 11},  {5, 22},  {6, 18},
      {7, 14}, {9, 21},  {10, 17}, {13, 20}, {16, 23}, {12, 24},
  };
  std::vector<Edge> edges;
  for (int i = 0; i < 24; ++i) edges.push_back({i, (i + 1) % 24, 1.0});
  for (const auto& [u, v] : kChords) edges.push_back({u - 1, v - 1, 1.0});
  return from_unit_edges(24, std::move(edges));
}

WeightedGraph gen_random_connected(int n, int extra_edges, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random connected graph needs at least 2 vertices");
  if (extra_edges < 0) throw std::invalid_argument("extra edge count must be nonnegative");
  Rng rng(seed);
  std::map<std::pair<int, int>, double> weights;
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    weights[{u, v}] = rng.uniform(0.5, 1.5);
  }
  const std::uint64_t max_extra =
      static_cast<std::uint64_t>(n) * (n - 1) / 2 - static_cast<std::uint64_t>(n - 1);
  int remaining = static_cast<int>(std::min<std::uint64_t>(extra_edges, max_extra));
  while (remaining > 0) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    const auto key = std::minmax(u, v);
    if (weights.contains({key.first, key.second})) continue;
    weights[{key.first, key.second}] = rng.uniform(0.5, 1.5);
    --remaining;
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) edges.push_back({key.first, key.second, w});
  return WeightedGraph::from_edge_list(n, edges);
}

PointCloud gaussian_clusters(std::span<const int> counts, const Eigen::MatrixXd& centers,
                             double stddev, std::uint64_t seed) {
  if (!(stddev > 0.0)) throw std::invalid_argument("stddev must be positive");
  if (static_cast<Eigen::Index>(counts.size()) != centers.rows())
    throw std::invalid_argument("one count per center required");
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("counts must be nonnegative");
    total += c;
  }
  if (total < 1) throw std::invalid_argument("cloud must contain at least one point");

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.resize(total, centers.cols());
  cloud.labels.reserve(total);
  int row = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (int i = 0; i < counts[c]; ++i, ++row) {
      for (Eigen::Index d = 0; d < centers.cols(); ++d)
        cloud.points(row, d) = centers(static_cast<Eigen::Index>(c), d) + stddev * rng.normal();
      cloud.labels.push_back(static_cast<int>(c));
    }
  }
  return cloud;
}

KnnGraphResult knn_gaussian_graph(const PointCloud& cloud, int k, BandwidthMode mode,
                                  double fixed_sigma) {
  const int m = cloud.size();
  if (m < 2) throw std::invalid_argument("cloud must contain at least 2 points");
  if (k < 1 || k >= m) throw std::invalid_argument("k must lie in [1, m-1]");
  if (mode == BandwidthMode::kFixed && !(fixed_sigma > 0.0))
    throw std::invalid_argument("fixed sigma must be positive");

  // Directed k-NN lists with (distance, index) ordering; ties on equal
  // distance resolve to the smaller index.
  std::vector<std::vector<int>> neighbors(m);
  std::vector<double> kth_distance(m);
  std::vector<std::pair<double, int>> row(m - 1);
  for (int i = 0; i < m; ++i) {
    int out = 0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      row[out++] = {(cloud.points.row(i) - cloud.points.row(j)).squaredNorm(), j};
    }
    std::partial_sort(row.begin(), row.begin() + k, row.end());
    neighbors[i].resize(k);
    for (int t = 0; t < k; ++t) neighbors[i][t] = row[t].second;
    kth_distance[i] = std::sqrt(row[k - 1].first);
  }

  double sigma = fixed_sigma;
  if (mode == BandwidthMode::kGlobalMeanKnn) {
    sigma = std::accumulate(kth_distance.begin(), kth_distance.end(), 0.0) / m;
    if (!(sigma > 0.0))
      throw std::invalid_argument("degenerate cloud: global k-NN bandwidth is zero");
  }

  // A <- (A + A^T)/2 accumulated per undirected pair; the kernel value is a
  // symmetric function of the positions, so both directions contribute w/2.
  std::map<std::pair<int, int>, double> accumulated;
  for (int i = 0; i < m; ++i) {
    for (int j : neighbors[i]) {
      const double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
      const double w = std::exp(-d2 / (sigma * sigma));
      accumulated[std::minmax(i, j)] += 0.5 * w;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(accumulated.size());
  for (const auto& [key, w] : accumulated) edges.push_back({key.first, key.second, w});

  return KnnGraphResult{WeightedGraph::from_edge_list(m, edges), sigma};
}

}  // namespace graphquad
