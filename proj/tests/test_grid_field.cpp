// Grid / TimeGrid / field basics: invariants, indexing, minimum-image
// metric, diffusion-matrix ellipticity window.

#include <catch2/catch_amalgamated.hpp>

#include "driftlab/core/field.hpp"
#include "driftlab/core/grid.hpp"
#include "driftlab/core/quadrature.hpp"

using namespace driftlab;

TEST_CASE("Grid validates its invariants") {
  REQUIRE_THROWS_AS(Grid(0, 16, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(Grid(4, 16, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(Grid(3, 6, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(Grid(3, 15, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(Grid(2, 16, -1.0), std::invalid_argument);

  Grid g(3, 16, 2.0);
  REQUIRE(g.h == Catch::Approx(0.25));
  REQUIRE(g.size() == 16u * 16u * 16u);
}

TEST_CASE("Grid indexing round-trips and coordinates span [-L, L)") {
  Grid g(3, 8, 1.0);
  for (std::size_t idx = 0; idx < g.size(); idx += 37) {
    auto ia = g.unindex(idx);
    REQUIRE(g.index(ia) == idx);
  }
  REQUIRE(g.coord(0) == Catch::Approx(-1.0));
  REQUIRE(g.coord(g.n - 1) == Catch::Approx(1.0 - g.h));
}

TEST_CASE("minimum-image distance wraps across the seam") {
  Grid g(2, 16, 1.0);
  REQUIRE(g.min_image(1.9) == Catch::Approx(-0.1));
  REQUIRE(g.min_image(-1.9) == Catch::Approx(0.1));
  Vec3 a{0.9, 0.0, 0.0}, b{-0.9, 0.0, 0.0};
  REQUIRE(g.dist(a, b) == Catch::Approx(0.2));
}

TEST_CASE("nearest grid node") {
  Grid g(1, 8, 1.0);
  Vec3 x{0.26, 0, 0};  // h = 0.25, nodes at -1, -0.75, ..., 0.75
  auto idx = g.nearest_index(x);
  REQUIRE(g.point(idx)[0] == Catch::Approx(0.25));
}

TEST_CASE("TimeGrid consistency") {
  TimeGrid tg(0.0, 1.0, 10);
  REQUIRE(tg.dt == Catch::Approx(0.1));
  REQUIRE(tg.consistent());
  REQUIRE_THROWS_AS(TimeGrid(1.0, 0.5, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(TimeGrid(-0.5, 0.5, 4), std::invalid_argument);
}

TEST_CASE("pairwise sum matches naive on well-conditioned data") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * double(i));
  double naive = 0;
  for (double x : v) naive += x;
  REQUIRE(pairwise_sum(v) == Catch::Approx(naive).epsilon(1e-12));
}

TEST_CASE("DiffusionMatrix ellipticity window") {
  auto id = DiffusionMatrix::identity(3);
  REQUIRE(id.ellipticity_ok());

  DiffusionMatrix m;
  m.dim = 3;
  m.A = {{{2, 0.5, 0}, {0.5, 1, 0}, {0, 0, 1}}};
  m.sigma = 0.5;
  m.xi = 2.5;
  REQUIRE(m.symmetric());
  auto [lo, hi] = m.eigen_range();
  // eigenvalues of [[2,.5],[.5,1]] are (3 +- sqrt(2))/2; third is 1
  REQUIRE(lo == Catch::Approx((3 - std::sqrt(2.0)) / 2).margin(1e-10));
  REQUIRE(hi == Catch::Approx((3 + std::sqrt(2.0)) / 2).margin(1e-10));
  REQUIRE(m.ellipticity_ok());

  m.xi = 2.0;  // top eigenvalue 2.207 now violates the window
  REQUIRE_FALSE(m.ellipticity_ok());

  Grid g(2, 8, 1.0);
  DiffusionMatrix v = DiffusionMatrix::identity(2);
  v.has_theta = true;
  v.theta = ScalarField(g, 1.0);
  v.theta[3] = 1.5;
  v.sigma = 0.9;
  v.xi = 1.6;
  REQUIRE(v.ellipticity_ok());
  v.theta[4] = 2.0;
  REQUIRE_FALSE(v.ellipticity_ok());
}
