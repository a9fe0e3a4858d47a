#include "graphquad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphquad/heatball.hpp"
#include "graphquad/rng.hpp"
#include "graphquad/version.hpp"

namespace graphquad {

namespace {

constexpr double kEigenspaceClusterTol = 1e-8;
constexpr double kDimensionGapTol = 1e-10;

std::string join_ints(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void require_full_spectrum(const Spectrum& s) {
  if (s.pairs() != s.vertex_count())
    throw std::invalid_argument("operation requires a full spectrum");
}

}  // namespace

double integrate(const QuadratureRule& rule, const Eigen::VectorXd& f) {
  validate_rule(rule, static_cast<int>(f.size()));
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.vertices.size(); ++i)
    acc += rule.weights[static_cast<Eigen::Index>(i)] * f[rule.vertices[i]];
  return acc;
}

IntegrationError integration_error(const QuadratureRule& rule, const Eigen::VectorXd& f,
                                   bool relative) {
  IntegrationError out;
  out.true_mean = f.mean();
  out.absolute = out.true_mean - integrate(rule, f);
  out.value = out.absolute;
  if (relative) {
    if (out.true_mean == 0.0) {
      out.zero_mean_fallback = true;
    } else {
      out.relative = true;
      out.value = out.absolute / std::abs(out.true_mean);
    }
  }
  return out;
}

Eigen::VectorXd rule_residual(const QuadratureRule& rule, int n) {
  validate_rule(rule, n);
  Eigen::VectorXd r = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (std::size_t i = 0; i < rule.vertices.size(); ++i)
    r[rule.vertices[i]] -= rule.weights[static_cast<Eigen::Index>(i)];
  return r;
}

int design_strength(const Spectrum& s, const QuadratureRule& rule, double tol) {
  require_full_spectrum(s);
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
  const int n = s.vertex_count();
  const Eigen::VectorXd r = rule_residual(rule, n);
  const Eigen::VectorXd coeffs = s.eigenvectors.transpose() * r;

  // Cluster by signed eigenvalue; each cluster is one eigenspace.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s.eigenvalues[a] < s.eigenvalues[b]; });

  int lost = 0;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           s.eigenvalues[order[end]] - s.eigenvalues[order[end - 1]] <= kEigenspaceClusterTol)
      ++end;
    double norm_sq = 0.0;
    for (std::size_t i = start; i < end; ++i) norm_sq += coeffs[order[i]] * coeffs[order[i]];
    if (std::sqrt(norm_sq) > tol) lost += static_cast<int>(end - start);
    start = end;
  }
  return n - lost;
}

BaselineStats random_baseline(const WeightedGraph& g, const Eigen::VectorXd& f, int k, int trials,
                              std::uint64_t seed) {
  const int n = g.vertex_count();
  if (f.size() != n) throw std::invalid_argument("vector length does not match vertex count");
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  const double mean = f.mean();
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<int> sample = rng.sample_without_replacement(n, k);
    double value = 0.0;
    for (int w : sample) value += f[w];
    const double err = std::abs(mean - value / k);
    sum += err;
    sum_sq += err * err;
  }
  BaselineStats stats;
  stats.trials = trials;
  stats.mean_abs_error = sum / trials;
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - trials * stats.mean_abs_error * stats.mean_abs_error) /
                          (trials - 1));
    stats.std_abs_error = std::sqrt(var);
  }
  return stats;
}

ExperimentResult sweep_ell(const DiffusionOperator& d, std::span<const int> vertices,
                           const std::vector<Eigen::VectorXd>& f_list, double lambda,
                           std::span<const int> ells, const QpOptions& opts) {
  if (ells.empty()) throw std::invalid_argument("ell range must be nonempty");
  const int n = d.size();
  const std::vector<int> sorted = canonical_vertex_set(vertices, n);
  for (const Eigen::VectorXd& f : f_list)
    if (f.size() != n) throw std::invalid_argument("test function length does not match graph");

  ExperimentResult out;
  out.header = {
      {"op", "sweep-ell"},
      {"version", kVersion},
      {"n", std::to_string(n)},
      {"W", join_ints(sorted)},
      {"lambda", std::to_string(lambda)},
      {"nonneg", opts.nonneg ? "1" : "0"},
      {"tol", std::to_string(opts.tol)},
      {"max_iters", std::to_string(opts.max_iters)},
      {"functions", std::to_string(f_list.size())},
  };
  out.columns = {"ell", "energy", "bound_factor"};
  for (std::size_t i = 0; i < f_list.size(); ++i) {
    out.columns.push_back("err_" + std::to_string(i + 1));
    out.columns.push_back("bound_" + std::to_string(i + 1));
  }

  for (int ell : ells) {
    const GramMatrix m = gram_matrix(d, sorted, ell);
    const QpResult qp = optimize_weights_qp(m, opts);
    QuadratureRule rule{m.vertices, qp.weights};
    const double e = energy(m, qp.weights, n);
    std::vector<double> row{static_cast<double>(ell), e, theorem_bound(e, lambda, ell, 1.0)};
    for (const Eigen::VectorXd& f : f_list) {
      row.push_back(integration_error(rule, f).absolute);
      row.push_back(theorem_bound(e, lambda, ell, f.norm()));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

ExperimentResult sweep_dimension(const Spectrum& s, std::span<const int> vertices,
                                 std::span<const int> dims, const QpOptions& opts) {
  require_full_spectrum(s);
  if (dims.empty()) throw std::invalid_argument("dimension list must be nonempty");
  const int n = s.vertex_count();
  const std::vector<int> sorted = canonical_vertex_set(vertices, n);

  // m is realizable when some λ in (0, 1] retains exactly the first m
  // eigenvalues: the |λ| gap after position m must be positive and |λ_m|
  // itself nonzero.
  std::vector<int> realizable;
  for (int m = 1; m <= n; ++m) {
    const double mag = std::abs(s.eigenvalues[m - 1]);
    if (mag <= 0.0) break;
    if (m == n || mag - std::abs(s.eigenvalues[m]) > kDimensionGapTol) realizable.push_back(m);
  }
  if (realizable.empty()) throw std::invalid_argument("no realizable X_lambda dimension");

  ExperimentResult out;
  const int shown = std::min(50, n);
  out.header = {
      {"op", "sweep-dim"},        {"version", kVersion},
      {"n", std::to_string(n)},   {"W", join_ints(sorted)},
      {"dims", join_ints(dims)},  {"nonneg", opts.nonneg ? "1" : "0"},
      {"tol", std::to_string(opts.tol)},
      {"max_iters", std::to_string(opts.max_iters)},
  };
  out.columns = {"m", "m_realized", "lambda", "objective", "kkt_residual", "converged"};
  for (int k = 1; k <= shown; ++k) out.columns.push_back("err_" + std::to_string(k));

  for (int m : dims) {
    if (m < 1 || m > n) throw std::invalid_argument("dimension out of range");
    int best = realizable.front();
    for (int cand : realizable)
      if (std::abs(cand - m) < std::abs(best - m) ||
          (std::abs(cand - m) == std::abs(best - m) && cand < best))
        best = cand;
    const double lambda =
        best == n ? std::abs(s.eigenvalues[n - 1])
                  : 0.5 * (std::abs(s.eigenvalues[best - 1]) + std::abs(s.eigenvalues[best]));

    const SpectralWeightResult res = optimize_weights_spectral(s, sorted, lambda, opts);
    QuadratureRule rule{sorted, res.weights};
    const Eigen::VectorXd r = rule_residual(rule, n);
    std::vector<double> row{static_cast<double>(m),  static_cast<double>(best),
                            lambda,                  res.objective,
                            res.kkt_residual,        res.converged ? 1.0 : 0.0};
    for (int k = 0; k < shown; ++k) row.push_back(std::abs(s.eigenvectors.col(k).dot(r)));
    out.rows.push_back(std::move(row));
  }
  return out;
}

SharpnessResult sharpness_check(const Spectrum& s, const QuadratureRule& rule, double lambda) {
  const int n = s.vertex_count();
  const XLambdaSpace space(s, lambda);
  const Eigen::VectorXd r = rule_residual(rule, n);
  SharpnessResult out;
  out.rhs = space.norm(r);
  const Eigen::VectorXd f_star = space.project(r);
  const double f_norm = space.norm(f_star);
  if (f_norm > 0.0)
    out.sup_ratio = std::abs(integration_error(rule, f_star).absolute) / f_norm;
  out.gap = out.rhs - out.sup_ratio;
  return out;
}

}  // namespace graphquad
