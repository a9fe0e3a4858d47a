#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphquad/graph.hpp"

namespace graphquad {

// Standard unit-weight families with documented canonical numbering.
WeightedGraph gen_cycle(int n);              // vertices 0..n-1 around the cycle, n >= 3
WeightedGraph gen_path(int n);               // 0 - 1 - ... - n-1, n >= 2
WeightedGraph gen_complete(int n);           // n >= 2
WeightedGraph gen_star(int leaves);          // vertex 0 is the center, leaves >= 1
WeightedGraph gen_grid(int rows, int cols);  // row-major ids, rows*cols >= 2

/// The McGee graph: the unique 3-regular girth-7 graph on 24 vertices
/// (24-cycle plus twelve chords), unit weights, 36 edges.
WeightedGraph gen_mcgee();

/// Seeded random connected graph: a random attachment tree plus extra
/// non-duplicate edges, weights uniform in [0.5, 1.5].
WeightedGraph gen_random_connected(int n, int extra_edges, std::uint64_t seed);

/// Rows are points; optional integer labels, one per point.
struct PointCloud {
  Eigen::MatrixXd points;
  std::vector<int> labels;

  int size() const { return static_cast<int>(points.rows()); }
  int dimension() const { return static_cast<int>(points.cols()); }
  bool labeled() const { return !labels.empty(); }
};

/// Seeded Gaussian blobs: counts[i] points around centers.row(i) with the
/// given standard deviation; labels record the generating center.
PointCloud gaussian_clusters(std::span<const int> counts, const Eigen::MatrixXd& centers,
                             double stddev, std::uint64_t seed);

enum class BandwidthMode {
  kGlobalMeanKnn,  // σ = mean over points of the distance to the k-th neighbor
  kFixed,
};

struct KnnGraphResult {
  WeightedGraph graph;
  double sigma = 0.0;  // the bandwidth actually used
};

/// Directed k-nearest-neighbor graph with Gaussian kernel weights
/// exp(-||x_i - x_j||^2 / σ^2), symmetrized by averaging with the transpose.
/// Neighbor ties at equal distance resolve to the smaller point index.
KnnGraphResult knn_gaussian_graph(const PointCloud& cloud, int k, BandwidthMode mode,
                                  double fixed_sigma = 0.0);

}  // namespace graphquad
