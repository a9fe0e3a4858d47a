#include "graphquad/heatball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "graphquad/weights.hpp"

namespace graphquad {

namespace {

Eigen::MatrixXd diffused_columns(const DiffusionOperator& d, const std::vector<int>& vertices,
                                 int ell) {
  const int n = d.size();
  const std::size_t k = vertices.size();
  if (static_cast<std::size_t>(n) * k > kGramMemoryCap)
    throw std::invalid_argument("n*k exceeds the diffused-column memory cap");
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    delta[vertices[j]] = 1.0;
    cols.col(static_cast<Eigen::Index>(j)) = d.apply_power(std::move(delta), ell);
  }
  return cols;
}

Eigen::MatrixXd symmetrized_gram(const Eigen::MatrixXd& cols) {
  Eigen::MatrixXd m = cols.transpose() * cols;
  m = (0.5 * (m + m.transpose())).eval();
  return m;
}

}  // namespace

GramMatrix gram_matrix(const DiffusionOperator& d, std::span<const int> vertices, int ell) {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  GramMatrix out;
  out.vertices = canonical_vertex_set(vertices, d.size());
  out.ell = ell;
  out.values = symmetrized_gram(diffused_columns(d, out.vertices, ell));
  return out;
}

double energy(const GramMatrix& m, const Eigen::VectorXd& weights, int n) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (weights.size() != m.values.rows())
    throw std::invalid_argument("weight vector length does not match the Gram matrix");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1 within 1e-12");
  return weights.dot(m.values * weights) - 1.0 / n;
}

double theorem_bound(double energy_value, double lambda, int ell, double f_norm) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in (0, 1)");
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  if (!(f_norm >= 0.0)) throw std::invalid_argument("f_norm must be nonnegative");
  if (energy_value < -1e-12)
    throw std::invalid_argument("energy below the -1e-12 roundoff floor");

  const double e = std::max(energy_value, 0.0);
  if (e == 0.0 || f_norm == 0.0) return 0.0;

  const double log_factor = -static_cast<double>(ell) * std::log(lambda);
  if (log_factor < 690.0)  // λ^{-ℓ} < ~1e300: safe to form directly
    return f_norm * std::exp(log_factor) * std::sqrt(e);
  const double log_bound = std::log(f_norm) + log_factor + 0.5 * std::log(e);
  if (log_bound >= std::log(std::numeric_limits<double>::max()))
    return std::numeric_limits<double>::infinity();
  return std::exp(log_bound);
}

BestEll best_ell(const DiffusionOperator& d, std::span<const int> vertices, double lambda,
                 int ell_max, WeightMode mode) {
  if (ell_max < 1) throw std::invalid_argument("ell_max must be at least 1");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in (0, 1)");

  const int n = d.size();
  const std::vector<int> sorted = canonical_vertex_set(vertices, n);
  const auto k = static_cast<Eigen::Index>(sorted.size());

  Eigen::MatrixXd cols = diffused_columns(d, sorted, 0);
  BestEll out;
  out.ell = 0;
  out.bound = std::numeric_limits<double>::infinity();
  for (int ell = 1; ell <= ell_max; ++ell) {
    for (Eigen::Index j = 0; j < k; ++j) cols.col(j) = d.apply(cols.col(j));
    GramMatrix m{sorted, ell, symmetrized_gram(cols)};
    Eigen::VectorXd w;
    if (mode == WeightMode::kUniform) {
      w = Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k));
    } else {
      w = optimize_weights_qp(m).weights;
    }
    const double e = energy(m, w, n);
    const double b = theorem_bound(e, lambda, ell, 1.0);
    out.evaluated.push_back({ell, e, b});
    if (b < out.bound) {
      out.bound = b;
      out.ell = ell;
      out.weights = std::move(w);
    }
  }
  return out;
}

}  // namespace graphquad
