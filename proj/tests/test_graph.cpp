#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "graphquad/builders.hpp"
#include "graphquad/graph.hpp"
#include "graphquad/rng.hpp"
#include "helpers.hpp"

using namespace graphquad;
using testutil::dirac;

TEST_SUITE("graph") {
  TEST_CASE("from_edge_list accepts a single edge") {
    const std::vector<Edge> edges{{0, 1, 1.0}};
    const WeightedGraph g = WeightedGraph::from_edge_list(2, edges);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.max_degree() == 1.0);
  }

  TEST_CASE("from_edge_list rejects malformed input") {
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(3, std::vector<Edge>{{0, 0, 1.0}}),
                    std::invalid_argument);  // self-loop
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(2, std::vector<Edge>{{0, 2, 1.0}}),
                    std::invalid_argument);  // id out of range
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(2, std::vector<Edge>{{-1, 1, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        WeightedGraph::from_edge_list(3, std::vector<Edge>{{0, 1, 1.0}, {1, 0, 2.0}}),
        std::invalid_argument);  // duplicate undirected pair
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(2, std::vector<Edge>{{0, 1, -0.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(2, std::vector<Edge>{{0, 1, 0.0}}),
                    std::invalid_argument);  // all weights zero
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(2, std::vector<Edge>{{0, 1, NAN}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph::from_edge_list(0, std::vector<Edge>{}),
                    std::invalid_argument);
  }

  TEST_CASE("zero-weight edges are dropped") {
    const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 0.0}};
    const WeightedGraph g = WeightedGraph::from_edge_list(3, edges);
    CHECK(g.edge_count() == 1);
    CHECK_FALSE(g.is_connected());
    CHECK(g.neighbors(2).empty());
  }

  TEST_CASE("single-vertex graph") {
    const WeightedGraph g = WeightedGraph::from_edge_list(1, std::vector<Edge>{});
    CHECK(g.vertex_count() == 1);
    CHECK(g.max_degree() == 0.0);
    CHECK(g.is_connected());
    const DiffusionOperator d{g};
    const Eigen::VectorXd out = d.apply(dirac(1, 0));
    CHECK(out[0] == 1.0);  // P = Id when there is nothing to diffuse over
  }

  TEST_CASE("d_max on the standard families") {
    CHECK(gen_star(3).max_degree() == 3.0);
    CHECK(gen_cycle(4).max_degree() == 2.0);
    CHECK(gen_path(3).max_degree() == 2.0);
  }

  TEST_CASE("neighbor lists are sorted by id") {
    const std::vector<Edge> edges{{3, 0, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}};
    const WeightedGraph g = WeightedGraph::from_edge_list(4, edges);
    const auto nbrs = g.neighbors(0);
    REQUIRE(nbrs.size() == 3);
    CHECK(nbrs[0].id == 1);
    CHECK(nbrs[1].id == 2);
    CHECK(nbrs[2].id == 3);
  }

  TEST_CASE("propagator on the 4-cycle") {
    const DiffusionOperator d{gen_cycle(4)};
    const Eigen::VectorXd out = d.apply(dirac(4, 0));
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.5);
  }

  TEST_CASE("propagator on the star") {
    const DiffusionOperator d{gen_star(3)};
    const Eigen::VectorXd out = d.apply(dirac(4, 0));
    CHECK(std::abs(out[0]) < 1e-15);
    for (int v = 1; v < 4; ++v) CHECK(out[v] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  }

  TEST_CASE("constants are invariant under P") {
    const DiffusionOperator d{gen_random_connected(17, 20, 5)};
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(17, 2.75);
    const Eigen::VectorXd out = d.apply(c);
    for (int v = 0; v < 17; ++v) CHECK(out[v] == doctest::Approx(2.75).epsilon(1e-14));
  }

  TEST_CASE("propagator powers") {
    const DiffusionOperator c4{gen_cycle(4)};
    CHECK(c4.apply_power(dirac(4, 0), 0) == dirac(4, 0));
    const Eigen::VectorXd two = c4.apply_power(dirac(4, 0), 2);
    CHECK(two[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(two[1]) < 1e-15);
    CHECK(two[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(two[3]) < 1e-15);

    const DiffusionOperator star{gen_star(3)};
    const Eigen::VectorXd s2 = star.apply_power(dirac(4, 0), 2);
    CHECK(s2[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
    for (int v = 1; v < 4; ++v) CHECK(s2[v] == doctest::Approx(2.0 / 9).epsilon(1e-14));

    CHECK_THROWS_AS(star.apply_power(dirac(4, 0), -1), std::invalid_argument);
    CHECK_THROWS_AS(star.apply(dirac(3, 0)), std::invalid_argument);
  }

  TEST_CASE("connectivity") {
    CHECK(gen_cycle(4).is_connected());
    const std::vector<Edge> disjoint{{0, 1, 1.0}, {2, 3, 1.0}};
    CHECK_FALSE(WeightedGraph::from_edge_list(4, disjoint).is_connected());
  }

  TEST_CASE("canonical_vertex_set") {
    const std::vector<int> w{3, 1, 2};
    CHECK(canonical_vertex_set(w, 5) == std::vector<int>{1, 2, 3});
    CHECK_THROWS_AS(canonical_vertex_set(std::vector<int>{1, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(canonical_vertex_set(std::vector<int>{5}, 5), std::invalid_argument);
    CHECK_THROWS_AS(canonical_vertex_set(std::vector<int>{}, 5), std::invalid_argument);
  }

  TEST_CASE("P is stochastic, lazy, self-adjoint, and mean preserving") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const int n = 8 + static_cast<int>(seed) * 7;
      const DiffusionOperator d{gen_random_connected(n, 2 * n, seed)};
      Rng rng(seed + 100);

      // Row sums and entry signs, probed through basis vectors.
      Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(n);
      for (int v = 0; v < n; ++v) {
        const Eigen::VectorXd col = d.apply(dirac(n, v));
        CHECK(col.minCoeff() >= -1e-14);
        row_sums += col;
        CHECK(d.normalized_degree(v) <= 1.0);
        CHECK(col[v] >= 0.0);  // lazy: nonnegative diagonal
      }
      for (int v = 0; v < n; ++v) CHECK(std::abs(row_sums[v] - 1.0) <= 1e-12);

      const Eigen::VectorXd x = testutil::random_vector(rng, n);
      const Eigen::VectorXd y = testutil::random_vector(rng, n);
      CHECK(std::abs(d.apply(x).dot(y) - x.dot(d.apply(y))) <= 1e-12 * x.norm() * y.norm());

      const Eigen::VectorXd g = testutil::random_vector(rng, n);
      CHECK(std::abs(d.apply(g).sum() - g.sum()) <= 1e-10 * g.cwiseAbs().sum());
    }
  }

  TEST_CASE("degree normalization hits 1 at the maximum-degree vertex") {
    const DiffusionOperator d{gen_star(5)};
    CHECK(d.normalized_degree(0) == 1.0);
    CHECK(d.d_max() == 5.0);
  }
}
