#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "graphquad/heatball.hpp"
#include "graphquad/spectral.hpp"

namespace graphquad {

/// A sampling set W with weights summing to 1.
struct QuadratureRule {
  std::vector<int> vertices;
  Eigen::VectorXd weights;
};

/// Throws unless the rule is well-formed on an n-vertex graph: distinct ids in
/// range, weights matching, sum within 1e-10 of 1 (and, if required,
/// entries >= -1e-12).
void validate_rule(const QuadratureRule& rule, int n, bool require_nonneg = false);

/// Euclidean projection onto {a : Σa = 1, a >= 0} by sort and threshold.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& y);

struct QpOptions {
  bool nonneg = true;
  double tol = 1e-9;
  int max_iters = 100000;
  /// Observer invoked once per projected-gradient iteration with the
  /// iteration number and current objective value.
  std::function<void(int, double)> on_iterate;
};

struct QpResult {
  Eigen::VectorXd weights;
  int iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

/// min a^T M a subject to Σa = 1 (and a >= 0 when opts.nonneg).
///
/// Sign-free mode solves the KKT conditions exactly after eliminating the sum
/// constraint, with a minimum-norm tie-break when M is singular. Nonnegative
/// mode runs projected gradient with step 1/(2 L̂), L̂ a power-iteration
/// estimate of ||M||_2, from the uniform start, until the KKT residual
/// reaches opts.tol or max_iters is exhausted (best iterate returned, flagged).
QpResult optimize_weights_qp(const GramMatrix& m, const QpOptions& opts = {});

/// First-order optimality violation of the simplex QP at a.
/// Sign-free: ||2Ma - μ1||_inf with μ the mean of 2Ma. Nonnegative
/// (complementary slackness form): with μ = min of 2(Ma)_w over the support
/// {a_w > 1e-10}, the maximum of |2(Ma)_w - μ| on the support and of
/// max(0, μ - 2(Ma)_w) off it.
double kkt_residual(const GramMatrix& m, const Eigen::VectorXd& a, bool nonneg);

struct SpectralWeightResult {
  Eigen::VectorXd weights;
  double objective = 0.0;  // achieved X_λ norm of 1/n - Σ a_w δ_w
  int iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
};

/// min ||1/n - Σ_w a_w δ_w||_{X_λ} subject to Σa = 1 (and a >= 0 when nonneg).
/// Least squares over the |K| retained eigenvector equations; sign-free mode
/// is an exact constrained solve with minimum-norm tie-break, nonnegative mode
/// is projected gradient as in the QP.
SpectralWeightResult optimize_weights_spectral(const Spectrum& s, std::span<const int> vertices,
                                               double lambda, const QpOptions& opts = {});

}  // namespace graphquad
