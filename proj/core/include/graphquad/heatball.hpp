#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "graphquad/graph.hpp"

namespace graphquad {

/// Default cap on n*k when materializing the k diffused columns.
inline constexpr std::size_t kGramMemoryCap = std::size_t{1} << 26;

/// Pairwise inner products <P^ℓ δ_{w_i}, P^ℓ δ_{w_j}> of diffused Diracs.
/// Symmetric, positive semidefinite, entries in [0, 1].
struct GramMatrix {
  std::vector<int> vertices;  // k distinct ids, sorted ascending
  int ell = 0;
  Eigen::MatrixXd values;     // k x k
};

/// Builds the Gram matrix from the k diffused columns P^ℓ δ_w
/// (k*ℓ sparse applications, then k^2 inner products).
GramMatrix gram_matrix(const DiffusionOperator& d, std::span<const int> vertices, int ell);

/// a^T M a - 1/n: the squared L2 mass of the diffused rule above the uniform
/// distribution. Nonnegative up to roundoff whenever the weights sum to 1.
double energy(const GramMatrix& m, const Eigen::VectorXd& weights, int n);

/// f_norm * λ^{-ℓ} * sqrt(max(energy, 0)).
/// Negative energy within the -1e-12 roundoff floor is clamped to zero;
/// λ^{-ℓ} beyond 1e300 is handled in log space.
double theorem_bound(double energy_value, double lambda, int ell, double f_norm);

enum class WeightMode { kUniform, kOptimized };

struct EllSweepPoint {
  int ell = 0;
  double energy = 0.0;
  double bound = 0.0;
};

struct BestEll {
  int ell = 0;
  Eigen::VectorXd weights;
  double bound = 0.0;
  std::vector<EllSweepPoint> evaluated;
};

/// Evaluates ℓ = 1..ell_max, re-optimizing weights per ℓ in optimized mode
/// (nonnegative QP with library defaults), and returns the ℓ minimizing the
/// bound factor λ^{-ℓ} sqrt(energy). Ties resolve to the smallest ℓ.
BestEll best_ell(const DiffusionOperator& d, std::span<const int> vertices, double lambda,
                 int ell_max, WeightMode mode);

}  // namespace graphquad
