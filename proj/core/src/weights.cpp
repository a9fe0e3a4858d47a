#include "graphquad/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "graphquad/errors.hpp"
#include "graphquad/rng.hpp"

namespace graphquad {

namespace {

constexpr double kSupportThreshold = 1e-10;

/// Inflated power-iteration estimate of ||M||_2 for a symmetric M, from a
/// fixed pseudo-random start so results are reproducible.
double power_norm_estimate(const Eigen::MatrixXd& m) {
  const Eigen::Index k = m.rows();
  Rng rng(0x9e3779b97f4a7c15ull);
  Eigen::VectorXd v(k);
  for (Eigen::Index i = 0; i < k; ++i) v[i] = rng.normal();
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXd w = m * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = std::abs(v.dot(w));
    v = w / norm;
    if (it > 2 && std::abs(next - estimate) <= 1e-13 * std::max(1.0, next)) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return estimate * 1.01;
}

void check_psd(const Eigen::MatrixXd& m, double norm_estimate) {
  // Shifted power iteration: the top eigenvalue of (L I - M) is L - λ_min(M).
  const Eigen::Index k = m.rows();
  const double shift = std::max(norm_estimate, 1.0);
  Eigen::MatrixXd shifted = -m;
  shifted.diagonal().array() += shift;
  const double top = power_norm_estimate(shifted);
  const double lambda_min = shift - top;
  if (lambda_min < -1e-8 * std::max(1.0, norm_estimate))
    throw std::invalid_argument("matrix is not positive semidefinite beyond tolerance");
  (void)k;
}

double simplex_kkt(const Eigen::VectorXd& grad, const Eigen::VectorXd& a, bool nonneg) {
  if (!nonneg) {
    const double mu = grad.mean();
    return (grad.array() - mu).abs().maxCoeff();
  }
  double mu = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] > kSupportThreshold) mu = std::min(mu, grad[i]);
  double res = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > kSupportThreshold)
      res = std::max(res, std::abs(grad[i] - mu));
    else
      res = std::max(res, std::max(0.0, mu - grad[i]));
  }
  return res;
}

/// Orthonormal basis of {z : 1^T z = 0}; empty for k = 1.
Eigen::MatrixXd sum_constraint_nullspace(Eigen::Index k) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(k, 1);
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(ones).householderQ() * Eigen::MatrixXd::Identity(k, k);
  return q.rightCols(k - 1);
}

struct PgOutcome {
  Eigen::VectorXd a;
  int iterations = 0;
  double kkt = 0.0;
  bool converged = false;
};

/// Projected gradient for min a^T Q a - 2 q^T a over the simplex.
PgOutcome projected_gradient(const Eigen::MatrixXd& quad, const Eigen::VectorXd& linear,
                             const QpOptions& opts) {
  const Eigen::Index k = quad.rows();
  const double lipschitz = power_norm_estimate(quad);
  const double step = lipschitz > 0.0 ? 1.0 / (2.0 * lipschitz) : 1.0;

  PgOutcome out;
  out.a = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  double prev_objective = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter <= opts.max_iters; ++iter) {
    const Eigen::VectorXd qa = quad * out.a;
    const Eigen::VectorXd grad = 2.0 * (qa - linear);
    const double objective = out.a.dot(qa) - 2.0 * linear.dot(out.a);
    if (objective > prev_objective + 1e-9 * std::max(1.0, std::abs(prev_objective)))
      throw numerical_error("projected gradient objective increased");
    prev_objective = objective;
    if (opts.on_iterate) opts.on_iterate(iter, objective);

    out.kkt = simplex_kkt(grad, out.a, true);
    out.iterations = iter;
    if (out.kkt <= opts.tol) {
      out.converged = true;
      break;
    }
    if (iter == opts.max_iters) break;
    out.a = project_to_simplex(out.a - step * grad);
  }
  return out;
}

/// Exact solve of min a^T Q a - 2 q^T a subject to 1^T a = 1: eliminate the
/// constraint with a = a0 + Z z and solve the reduced normal equations by a
/// rank-revealing decomposition. The minimum-norm z coincides with the
/// minimum-norm a because every feasible a has the same inner product with a0.
Eigen::VectorXd constrained_quadratic_solve(const Eigen::MatrixXd& quad,
                                            const Eigen::VectorXd& linear) {
  const Eigen::Index k = quad.rows();
  const Eigen::VectorXd a0 = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  if (k == 1) return a0;
  const Eigen::MatrixXd z = sum_constraint_nullspace(k);
  const Eigen::MatrixXd reduced = z.transpose() * quad * z;
  const Eigen::VectorXd rhs = z.transpose() * (linear - quad * a0);
  const Eigen::VectorXd zsol =
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(reduced).solve(rhs);
  return a0 + z * zsol;
}

}  // namespace

void validate_rule(const QuadratureRule& rule, int n, bool require_nonneg) {
  const std::vector<int> sorted = canonical_vertex_set(rule.vertices, n);
  (void)sorted;
  if (rule.weights.size() != static_cast<Eigen::Index>(rule.vertices.size()))
    throw std::invalid_argument("rule weight count does not match vertex count");
  if (std::abs(rule.weights.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("rule weights must sum to 1 within 1e-10");
  if (require_nonneg && rule.weights.minCoeff() < -1e-12)
    throw std::invalid_argument("rule weights must be nonnegative within 1e-12");
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& y) {
  const Eigen::Index k = y.size();
  if (k == 0) throw std::invalid_argument("cannot project an empty vector");
  std::vector<double> sorted(y.data(), y.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  return y.array().unaryExpr([tau](double v) { return std::max(v - tau, 0.0); });
}

QpResult optimize_weights_qp(const GramMatrix& m, const QpOptions& opts) {
  const Eigen::Index k = m.values.rows();
  if (k == 0 || m.values.cols() != k) throw std::invalid_argument("Gram matrix must be square");
  if ((m.values - m.values.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Gram matrix must be symmetric");
  const double norm_estimate = power_norm_estimate(m.values);
  check_psd(m.values, norm_estimate);

  QpResult result;
  if (!opts.nonneg) {
    result.weights = constrained_quadratic_solve(m.values, Eigen::VectorXd::Zero(k));
    result.kkt_residual = simplex_kkt(2.0 * (m.values * result.weights), result.weights, false);
    result.converged = result.kkt_residual <= std::max(opts.tol, 1e-8);
    return result;
  }
  PgOutcome pg = projected_gradient(m.values, Eigen::VectorXd::Zero(k), opts);
  result.weights = std::move(pg.a);
  result.iterations = pg.iterations;
  result.kkt_residual = pg.kkt;
  result.converged = pg.converged;
  return result;
}

double kkt_residual(const GramMatrix& m, const Eigen::VectorXd& a, bool nonneg) {
  if (a.size() != m.values.rows())
    throw std::invalid_argument("weight vector length does not match the Gram matrix");
  return simplex_kkt(2.0 * (m.values * a), a, nonneg);
}

SpectralWeightResult optimize_weights_spectral(const Spectrum& s, std::span<const int> vertices,
                                               double lambda, const QpOptions& opts) {
  const int n = s.vertex_count();
  const std::vector<int> sorted = canonical_vertex_set(vertices, n);
  const XLambdaSpace space(s, lambda);
  const auto k = static_cast<Eigen::Index>(sorted.size());
  const int dim = space.dim();

  // One equation per retained eigenvector: sum_w a_w φ_j(w) should match the
  // mean of φ_j. Under the sum constraint the constant-eigenvector equation is
  // satisfied identically on connected graphs.
  Eigen::MatrixXd lhs(dim, k);
  Eigen::VectorXd target(dim);
  for (int j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) lhs(j, i) = s.eigenvectors(sorted[i], j);
    target[j] = s.eigenvectors.col(j).mean();
  }

  SpectralWeightResult result;
  if (!opts.nonneg) {
    const Eigen::VectorXd a0 = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    if (k == 1) {
      result.weights = a0;
    } else {
      // Least squares directly on the eliminated system (avoids squaring the
      // condition number through the normal equations).
      const Eigen::MatrixXd z = sum_constraint_nullspace(k);
      const Eigen::VectorXd zsol = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(lhs * z)
                                       .solve(target - lhs * a0);
      result.weights = a0 + z * zsol;
    }
    const Eigen::VectorXd grad =
        2.0 * (lhs.transpose() * (lhs * result.weights) - lhs.transpose() * target);
    result.kkt_residual = simplex_kkt(grad, result.weights, false);
    result.converged = true;
  } else {
    const Eigen::MatrixXd quad = lhs.transpose() * lhs;
    const Eigen::VectorXd linear = lhs.transpose() * target;
    PgOutcome pg = projected_gradient(quad, linear, opts);
    result.weights = std::move(pg.a);
    result.iterations = pg.iterations;
    result.kkt_residual = pg.kkt;
    result.converged = pg.converged;
  }
  result.objective = (target - lhs * result.weights).norm();
  return result;
}

}  // namespace graphquad
