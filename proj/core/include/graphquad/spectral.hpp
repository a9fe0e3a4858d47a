#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphquad/graph.hpp"

namespace graphquad {

inline constexpr int kDefaultDenseCap = 4096;

/// Eigenpairs of P ordered by |λ| descending, ties broken by signed value
/// descending and then by solver index. Column k of `eigenvectors` belongs to
/// `eigenvalues[k]`; the columns are orthonormal and each one has its
/// largest-magnitude entry positive (first such entry on ties).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  bool connected = true;
  std::vector<std::string> warnings;

  int pairs() const { return static_cast<int>(eigenvalues.size()); }
  int vertex_count() const { return static_cast<int>(eigenvectors.rows()); }

  /// |K| for the threshold λ: the length of the prefix with |λ_k| >= λ.
  int x_lambda_dim(double lambda) const;
};

/// Full dense symmetric eigendecomposition of P (Householder tridiagonalization
/// followed by implicit-shift QL/QR). Throws when n exceeds `dense_cap`;
/// use top_k_eigenpairs beyond that.
Spectrum eigendecompose(const DiffusionOperator& d, int dense_cap = kDefaultDenseCap);

struct TopKOptions {
  double tol = 1e-10;
  int max_iters = 5000;
  std::uint64_t seed = 0;
};

struct TopKResult {
  Spectrum spectrum;
  bool converged = false;
  double max_residual = 0.0;
  int iterations = 0;
};

/// Leading k eigenpairs by |λ| via block orthogonal iteration on P with
/// Rayleigh-Ritz extraction; the block is seeded deterministically from
/// `opts.seed`. Non-convergence is reported through the flag and the achieved
/// residual, with the best iterate returned.
TopKResult top_k_eigenpairs(const DiffusionOperator& d, int k, const TopKOptions& opts = {});

/// The span of eigenvectors with |λ_k| >= λ, 0 < λ <= 1. Requires the
/// spectrum to cover the whole index set K (always true for full spectra;
/// partial spectra must reach below the threshold).
class XLambdaSpace {
 public:
  XLambdaSpace(const Spectrum& spectrum, double lambda);

  double lambda() const { return lambda_; }
  int dim() const { return dim_; }
  const Spectrum& spectrum() const { return *spectrum_; }

  /// Retained coefficients <f, φ_k> for k in K.
  Eigen::VectorXd coefficients(const Eigen::VectorXd& f) const;

  /// Σ_{k in K} <f, φ_k> φ_k.
  Eigen::VectorXd project(const Eigen::VectorXd& f) const;

  /// sqrt of the sum of squared retained coefficients; a semi-norm on all of R^n.
  double norm(const Eigen::VectorXd& f) const;

 private:
  const Spectrum* spectrum_;
  double lambda_;
  int dim_;
};

struct XLambdaProjection {
  Eigen::VectorXd projection;
  Eigen::VectorXd coefficients;
};

XLambdaProjection x_lambda_project(const Spectrum& s, const Eigen::VectorXd& f, double lambda);
double x_lambda_norm(const Spectrum& s, const Eigen::VectorXd& f, double lambda);

}  // namespace graphquad
