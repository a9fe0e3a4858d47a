#include "graphquad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "graphquad/rng.hpp"

namespace graphquad {

namespace {

// |λ| descending, then signed value descending (so λ = +1 precedes λ = -1),
// then original index.
std::vector<int> sorted_order(const Eigen::VectorXd& values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return idx;
}

// Deterministic sign convention: the entry of largest magnitude (first such
// entry on ties) is made positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> column) {
  int arg = 0;
  double best = -1.0;
  for (int i = 0; i < column.size(); ++i) {
    const double mag = std::abs(column[i]);
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  if (column[arg] < 0.0) column = -column;
}

void attach_connectivity(Spectrum& s, const DiffusionOperator& d) {
  s.connected = d.graph().is_connected();
  if (!s.connected)
    s.warnings.push_back(
        "graph is disconnected: the eigenvalue 1 has multiplicity > 1 and the "
        "constant vector need not appear as an eigenvector column");
}

}  // namespace

int Spectrum::x_lambda_dim(double lambda) const {
  int k = 0;
  while (k < pairs() && std::abs(eigenvalues[k]) >= lambda) ++k;
  return k;
}

Spectrum eigendecompose(const DiffusionOperator& d, int dense_cap) {
  const int n = d.size();
  if (n > dense_cap)
    throw std::invalid_argument("vertex count " + std::to_string(n) +
                                " exceeds the dense eigendecomposition cap " +
                                std::to_string(dense_cap) + "; use top_k_eigenpairs instead");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d.dense());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense symmetric eigendecomposition failed to converge");

  const std::vector<int> order = sorted_order(solver.eigenvalues());
  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    s.eigenvalues[k] = solver.eigenvalues()[order[k]];
    s.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
    fix_sign(s.eigenvectors.col(k));
  }
  attach_connectivity(s, d);
  return s;
}

TopKResult top_k_eigenpairs(const DiffusionOperator& d, int k, const TopKOptions& opts) {
  const int n = d.size();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be positive");

  // A small buffer past k speeds convergence and absorbs |λ| ties at the cut.
  const int block = std::min(n, k + 2);

  Rng rng(opts.seed);
  Eigen::MatrixXd x(n, block);
  for (int j = 0; j < block; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = rng.normal();
  x = Eigen::HouseholderQR<Eigen::MatrixXd>(x).householderQ() * Eigen::MatrixXd::Identity(n, block);

  Eigen::MatrixXd y(n, block);
  Eigen::VectorXd ritz_values(block);
  Eigen::MatrixXd ritz_vectors(n, block);
  double max_residual = std::numeric_limits<double>::infinity();
  int used = 0;

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    used = iter;
    for (int j = 0; j < block; ++j) y.col(j) = d.apply(x.col(j));

    // Rayleigh-Ritz on the current block.
    Eigen::MatrixXd small = x.transpose() * y;
    small = 0.5 * (small + small.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(small);
    const std::vector<int> order = sorted_order(ritz.eigenvalues());

    Eigen::MatrixXd basis(block, block);
    for (int j = 0; j < block; ++j) {
      ritz_values[j] = ritz.eigenvalues()[order[j]];
      basis.col(j) = ritz.eigenvectors().col(order[j]);
    }
    ritz_vectors = x * basis;
    const Eigen::MatrixXd applied = y * basis;  // P z_j for each Ritz vector

    max_residual = 0.0;
    for (int j = 0; j < k; ++j)
      max_residual =
          std::max(max_residual, (applied.col(j) - ritz_values[j] * ritz_vectors.col(j)).norm());
    if (max_residual <= opts.tol) break;

    x = Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ() *
        Eigen::MatrixXd::Identity(n, block);
  }

  TopKResult result;
  result.iterations = used;
  result.max_residual = max_residual;
  result.converged = max_residual <= opts.tol;
  result.spectrum.eigenvalues = ritz_values.head(k);
  result.spectrum.eigenvectors = ritz_vectors.leftCols(k);
  for (int j = 0; j < k; ++j) fix_sign(result.spectrum.eigenvectors.col(j));
  attach_connectivity(result.spectrum, d);
  if (!result.converged)
    result.spectrum.warnings.push_back("block iteration stopped at residual " +
                                       std::to_string(max_residual));
  return result;
}

XLambdaSpace::XLambdaSpace(const Spectrum& spectrum, double lambda)
    : spectrum_(&spectrum), lambda_(lambda) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("lambda must lie in (0, 1]");
  dim_ = spectrum.x_lambda_dim(lambda);
  // A partial spectrum certifies coverage of K only if it reaches below λ.
  if (spectrum.pairs() < spectrum.vertex_count() && dim_ == spectrum.pairs())
    throw std::invalid_argument(
        "partial spectrum does not certify coverage of all eigenvalues with |λ| >= threshold");
}

Eigen::VectorXd XLambdaSpace::coefficients(const Eigen::VectorXd& f) const {
  if (f.size() != spectrum_->vertex_count())
    throw std::invalid_argument("vector length does not match vertex count");
  return spectrum_->eigenvectors.leftCols(dim_).transpose() * f;
}

Eigen::VectorXd XLambdaSpace::project(const Eigen::VectorXd& f) const {
  return spectrum_->eigenvectors.leftCols(dim_) * coefficients(f);
}

double XLambdaSpace::norm(const Eigen::VectorXd& f) const { return coefficients(f).norm(); }

XLambdaProjection x_lambda_project(const Spectrum& s, const Eigen::VectorXd& f, double lambda) {
  const XLambdaSpace space(s, lambda);
  XLambdaProjection out;
  out.coefficients = space.coefficients(f);
  out.projection = s.eigenvectors.leftCols(space.dim()) * out.coefficients;
  return out;
}

double x_lambda_norm(const Spectrum& s, const Eigen::VectorXd& f, double lambda) {
  return XLambdaSpace(s, lambda).norm(f);
}

}  // namespace graphquad
