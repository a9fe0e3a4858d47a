#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "doctest.h"
#include "graphquad/builders.hpp"
#include "graphquad/eval.hpp"
#include "graphquad/heatball.hpp"
#include "graphquad/spectral.hpp"
#include "helpers.hpp"

using namespace graphquad;
using testutil::dirac;

TEST_SUITE("heatball") {
  TEST_CASE("gram matrix of the star") {
    const DiffusionOperator d{gen_star(3)};
    const GramMatrix m = gram_matrix(d, std::vector<int>{0, 1}, 1);
    CHECK(m.values(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(m.values(0, 1) == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(m.values(1, 0) == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(m.values(1, 1) == doctest::Approx(5.0 / 9).epsilon(1e-14));
  }

  TEST_CASE("gram at zero steps is the identity") {
    const DiffusionOperator d{gen_random_connected(12, 20, 1)};
    const GramMatrix m = gram_matrix(d, std::vector<int>{2, 5, 9}, 0);
    CHECK((m.values - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("gram of adjacent cycle vertices") {
    const DiffusionOperator d{gen_cycle(4)};
    const GramMatrix m = gram_matrix(d, std::vector<int>{0, 1}, 1);
    CHECK(m.values(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.values(0, 1) == 0.0);
    CHECK(m.values(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("gram validation") {
    const DiffusionOperator d{gen_cycle(4)};
    CHECK_THROWS_AS(gram_matrix(d, std::vector<int>{0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(gram_matrix(d, std::vector<int>{0, 9}, 1), std::invalid_argument);
    CHECK_THROWS_AS(gram_matrix(d, std::vector<int>{0, 1}, -1), std::invalid_argument);
  }

  TEST_CASE("the two gram routes agree") {
    // M_ij can come from pairwise inner products of diffused columns, or from
    // reading P^{2l} δ_{w_j} at w_i.
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const int n = 8 + 6 * static_cast<int>(seed);
      const DiffusionOperator d{gen_random_connected(n, 2 * n, seed + 7)};
      Rng rng(seed);
      const std::vector<int> w = rng.sample_without_replacement(n, 3 + static_cast<int>(seed));
      for (int ell : {0, 1, 2, 4}) {
        const GramMatrix m = gram_matrix(d, w, ell);
        for (std::size_t j = 0; j < m.vertices.size(); ++j) {
          const Eigen::VectorXd col = d.apply_power(dirac(n, m.vertices[j]), 2 * ell);
          for (std::size_t i = 0; i < m.vertices.size(); ++i)
            CHECK(std::abs(m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                           col[m.vertices[i]]) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("gram invariants on random instances") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const int n = 10 + 5 * static_cast<int>(seed);
      const DiffusionOperator d{gen_random_connected(n, n, seed + 19)};
      Rng rng(seed + 3);
      const std::vector<int> w = rng.sample_without_replacement(n, 4);
      const GramMatrix m = gram_matrix(d, w, 2);
      CHECK((m.values - m.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(m.values.minCoeff() >= 0.0);
      CHECK(m.values.maxCoeff() <= 1.0 + 1e-12);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.values);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }

  TEST_CASE("energy examples") {
    const DiffusionOperator c4{gen_cycle(4)};
    const GramMatrix mc4 = gram_matrix(c4, std::vector<int>{0, 1}, 1);
    Eigen::VectorXd half(2);
    half << 0.5, 0.5;
    CHECK(std::abs(energy(mc4, half, 4)) <= 1e-14);

    const DiffusionOperator single{gen_path(5)};
    const GramMatrix m0 = gram_matrix(single, std::vector<int>{2}, 0);
    Eigen::VectorXd one(1);
    one << 1.0;
    CHECK(energy(m0, one, 5) == doctest::Approx(1.0 - 0.2).epsilon(1e-15));

    const DiffusionOperator star{gen_star(3)};
    const GramMatrix ms = gram_matrix(star, std::vector<int>{0, 1}, 1);
    Eigen::VectorXd a(2);
    a << 0.75, 0.25;
    CHECK(energy(ms, a, 4) == doctest::Approx(1.0 / 18).epsilon(1e-12));

    Eigen::VectorXd bad(2);
    bad << 0.75, 0.35;
    CHECK_THROWS_AS(energy(ms, bad, 4), std::invalid_argument);
  }

  TEST_CASE("theorem bound arithmetic") {
    CHECK(theorem_bound(0.0, 0.5, 3, 10.0) == 0.0);
    CHECK(theorem_bound(1.0 / 18, 0.5, 1, 1.0) ==
          doctest::Approx(2.0 * std::sqrt(1.0 / 18)).epsilon(1e-12));
    CHECK(theorem_bound(0.3, 0.5, 2, 0.0) == 0.0);
    CHECK(theorem_bound(-5e-13, 0.5, 1, 1.0) == 0.0);  // roundoff clamp
    CHECK_THROWS_AS(theorem_bound(0.1, 0.0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theorem_bound(0.1, 1.0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theorem_bound(0.1, -0.2, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theorem_bound(-1e-6, 0.5, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theorem_bound(0.1, 0.5, -1, 1.0), std::invalid_argument);
  }

  TEST_CASE("theorem bound goes through log space instead of overflowing") {
    // λ^{-ℓ} alone overflows, but the energy pulls the product back down.
    const double b = theorem_bound(1e-200, 0.1, 350, 1.0);
    CHECK(std::isfinite(b));
    CHECK(std::log10(b) == doctest::Approx(250.0).epsilon(1e-9));
    // Genuine overflow reports infinity, not NaN.
    const double inf = theorem_bound(1.0, 0.1, 700, 1.0);
    CHECK(std::isinf(inf));
  }

  TEST_CASE("best_ell on the exact 4-cycle rule") {
    const DiffusionOperator d{gen_cycle(4)};
    const BestEll best = best_ell(d, std::vector<int>{0, 1}, 0.5, 5, WeightMode::kUniform);
    CHECK(best.ell == 1);
    CHECK(best.bound == 0.0);
  }

  TEST_CASE("best_ell with the whole vertex set") {
    const DiffusionOperator d{gen_cycle(6)};
    const BestEll best =
        best_ell(d, std::vector<int>{0, 1, 2, 3, 4, 5}, 0.7, 4, WeightMode::kUniform);
    CHECK(best.ell == 1);  // every ℓ ties at bound 0: smallest wins
    for (const EllSweepPoint& p : best.evaluated) CHECK(std::abs(p.energy) <= 1e-14);
  }

  TEST_CASE("best_ell matches an exhaustive sweep") {
    const DiffusionOperator d{gen_star(3)};
    const std::vector<int> w{0, 1};
    const BestEll best = best_ell(d, w, 0.5, 4, WeightMode::kOptimized);
    REQUIRE(best.evaluated.size() == 4);
    int arg = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (int ell = 1; ell <= 4; ++ell) {
      const GramMatrix m = gram_matrix(d, w, ell);
      const QpResult qp = optimize_weights_qp(m);
      const double bound = theorem_bound(energy(m, qp.weights, 4), 0.5, ell, 1.0);
      CHECK(best.evaluated[ell - 1].bound == doctest::Approx(bound).epsilon(1e-9));
      if (bound < smallest) {
        smallest = bound;
        arg = ell;
      }
    }
    CHECK(best.ell == arg);
    CHECK(best.bound == doctest::Approx(smallest).epsilon(1e-12));
  }

  TEST_CASE("energy dissipates monotonically in ell") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const int n = 12 + 6 * static_cast<int>(seed);
      const DiffusionOperator d{gen_random_connected(n, 2 * n, seed + 31)};
      Rng rng(seed);
      const QuadratureRule rule = testutil::random_rule(rng, n, 4, true);
      double prev = std::numeric_limits<double>::infinity();
      for (int ell = 0; ell <= 6; ++ell) {
        const double e = energy(gram_matrix(d, rule.vertices, ell), rule.weights, n);
        CHECK(e <= prev + 1e-12);
        CHECK(e >= -1e-12);  // Cauchy-Schwarz floor
        prev = e;
      }
    }
  }

  TEST_CASE("squaring-out identity") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const int n = 9 + 7 * static_cast<int>(seed);
      const DiffusionOperator d{gen_random_connected(n, 2 * n, seed + 53)};
      Rng rng(seed + 1);
      const QuadratureRule rule = testutil::random_rule(rng, n, 5, seed % 2 == 0);
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
      for (std::size_t i = 0; i < rule.vertices.size(); ++i)
        mu[rule.vertices[i]] += rule.weights[static_cast<Eigen::Index>(i)];
      for (int ell : {1, 2, 4}) {
        const Eigen::VectorXd diffused = d.apply_power(mu, ell);
        const double direct =
            (Eigen::VectorXd::Constant(n, 1.0 / n) - diffused).squaredNorm();
        const double via_gram = energy(gram_matrix(d, rule.vertices, ell), rule.weights, n);
        CHECK(std::abs(direct - via_gram) <= 1e-12);
      }
    }
  }

  TEST_CASE("realized error never beats the bound") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const int n = 8 + static_cast<int>(seed) * 7;
      const DiffusionOperator d{gen_random_connected(n, 2 * n, seed + 400)};
      const Spectrum s = eigendecompose(d);
      Rng rng(seed);
      const QuadratureRule rule = testutil::random_rule(rng, n, 3 + n / 8, seed % 2 == 0);
      for (double lambda : {0.3, 0.6, 0.9}) {
        const Eigen::VectorXd f =
            x_lambda_project(s, testutil::random_vector(rng, n), lambda).projection;
        const double f_norm = x_lambda_norm(s, f, lambda);
        const double err = std::abs(integration_error(rule, f).absolute);
        for (int ell = 1; ell <= 8; ++ell) {
          const double e = energy(gram_matrix(d, rule.vertices, ell), rule.weights, n);
          CHECK(err <= theorem_bound(e, lambda, ell, f_norm) + 1e-9);
        }
      }
    }
  }
}
