#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graphquad/graph.hpp"
#include "graphquad/spectral.hpp"
#include "graphquad/weights.hpp"

namespace graphquad {

/// Σ_w a_w f(w).
double integrate(const QuadratureRule& rule, const Eigen::VectorXd& f);

struct IntegrationError {
  double value = 0.0;      // error in the requested mode
  double absolute = 0.0;   // (1/n) Σ_v f(v) - Σ_w a_w f(w)
  double true_mean = 0.0;
  bool relative = false;   // value was divided by |true mean|
  bool zero_mean_fallback = false;  // relative requested but the mean is zero
};

IntegrationError integration_error(const QuadratureRule& rule, const Eigen::VectorXd& f,
                                   bool relative = false);

/// The vector (1/n) 1 - Σ_w a_w δ_w whose pairing with f is the integration error.
Eigen::VectorXd rule_residual(const QuadratureRule& rule, int n);

/// Number of eigenvalues, counted with multiplicity, whose eigenspaces the
/// rule integrates exactly. Eigenvalues are clustered into eigenspaces
/// (signed difference at most 1e-8); an eigenspace counts fully when the
/// residual's projection onto it has norm at most tol, and not at all
/// otherwise, which keeps the count independent of the basis chosen inside
/// degenerate eigenspaces. Requires a full spectrum.
int design_strength(const Spectrum& s, const QuadratureRule& rule, double tol);

struct BaselineStats {
  double mean_abs_error = 0.0;
  double std_abs_error = 0.0;
  int trials = 0;
};

/// Uniform random k-subsets with weights 1/k; seeded.
BaselineStats random_baseline(const WeightedGraph& g, const Eigen::VectorXd& f, int k, int trials,
                              std::uint64_t seed);

/// Key-value header (full configuration echo plus version) and a numeric
/// table. Reproducible byte for byte from the echoed configuration.
struct ExperimentResult {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// For each ℓ: optimize weights on gram_matrix(d, W, ℓ) and record the energy,
/// the bound factor λ^{-ℓ} sqrt(energy), and per test function the realized
/// error and the bound with the function's l2 norm (equal to its X_λ norm for
/// functions already inside X_λ).
ExperimentResult sweep_ell(const DiffusionOperator& d, std::span<const int> vertices,
                           const std::vector<Eigen::VectorXd>& f_list, double lambda,
                           std::span<const int> ells, const QpOptions& opts = {});

/// For each requested dimension m: pick λ realizing an X_λ space of dimension
/// exactly m (nearest realizable dimension when |λ_m| ties with |λ_{m+1}|),
/// optimize spectral weights there, and record the objective plus the
/// per-eigenvector integration errors for k = 1..min(50, n).
ExperimentResult sweep_dimension(const Spectrum& s, std::span<const int> vertices,
                                 std::span<const int> dims, const QpOptions& opts = {});

struct SharpnessResult {
  double sup_ratio = 0.0;  // |error(f*)| / ||f*||_{X_λ} with f* the projected residual
  double rhs = 0.0;        // ||residual||_{X_λ}
  double gap = 0.0;        // rhs - sup_ratio
};

/// Checks that the worst-case error ratio over X_λ is attained by the
/// projected residual; f* = 0 (rule exact on X_λ) yields sup_ratio 0.
SharpnessResult sharpness_check(const Spectrum& s, const QuadratureRule& rule, double lambda);

}  // namespace graphquad
