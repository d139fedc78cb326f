#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nehari/grid.hpp"

using namespace nehari;

namespace {

std::shared_ptr<const Grid> half_grid(double L, double h, int dim = 3) {
  DomainSpec spec;
  spec.kind = DomainKind::HalfSpaceBox;
  spec.dim = dim;
  spec.extent = {L};
  return std::make_shared<Grid>(Grid::build(spec, h));
}

Field random_on(std::shared_ptr<const Grid> g, unsigned seed) {
  Field u(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t n = 0; n < u.size(); ++n) u[n] = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("box with one interior node") {
  DomainSpec spec;
  spec.kind = DomainKind::Box;
  spec.dim = 3;
  spec.extent = {1.0, 1.0, 1.0};
  const Grid g = Grid::build(spec, 0.5);
  REQUIRE(g.size() == 1);
  CHECK(g.coord(0, 0) == doctest::Approx(0.5));
  CHECK(g.coord(0, 1) == doctest::Approx(0.5));
  CHECK(g.coord(0, 2) == doctest::Approx(0.5));
  CHECK(g.radius(0) == doctest::Approx(std::sqrt(0.75)));
}

TEST_CASE("half-space box node count") {
  auto g = half_grid(1.0, 0.5);
  CHECK(g->size() == 9);  // 3 x 3 x 1
  for (std::size_t n = 0; n < g->size(); ++n) CHECK(g->radius(n) > 0.0);
}

TEST_CASE("perturbed boundary matches brute-force enumeration") {
  DomainSpec spec;
  spec.kind = DomainKind::PerturbedBoundary;
  spec.dim = 3;
  spec.extent = {1.0};
  spec.alpha = {-1.0, -1.0};
  const double h = 0.25;
  const Grid g = Grid::build(spec, h);
  // oracle: direct lattice loop over the bounding box
  std::size_t count = 0;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      for (int k = -4; k <= 4; ++k) {
        const double x = i * h, y = j * h, z = k * h;
        if (std::abs(i) < 4 && std::abs(j) < 4 && k < 4 &&
            z > -(x * x + y * y))
          ++count;
      }
  CHECK(g.size() == count);
}

TEST_CASE("degenerate grids are rejected") {
  DomainSpec spec;
  spec.kind = DomainKind::Box;
  spec.dim = 3;
  spec.extent = {0.1, 0.1, 0.1};
  CHECK_THROWS_AS(Grid::build(spec, 0.5), EmptyInterior);
  spec.extent = {1.0, 1.0, 1.0};
  CHECK_THROWS(Grid::build(spec, -0.5));
}

TEST_CASE("mean curvature at the origin") {
  DomainSpec spec;
  spec.kind = DomainKind::PerturbedBoundary;
  spec.dim = 3;
  spec.extent = {1.0};
  spec.alpha = {-1.0, -1.0};
  CHECK(mean_curvature_at_origin(spec) == doctest::Approx(-1.0));
  spec.alpha = {0.0, 0.0};
  CHECK(mean_curvature_at_origin(spec) == doctest::Approx(0.0));
  spec.dim = 4;
  spec.alpha = {-1.0, 2.0, -4.0};
  CHECK(mean_curvature_at_origin(spec) == doctest::Approx(-1.0));
  // linearity in alpha
  DomainSpec two = spec;
  for (double& a : two.alpha) a *= 2.0;
  CHECK(mean_curvature_at_origin(two) ==
        doctest::Approx(2.0 * mean_curvature_at_origin(spec)));
  spec.kind = DomainKind::Box;
  spec.extent = {1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS(mean_curvature_at_origin(spec));
  spec.kind = DomainKind::HalfSpaceBox;
  spec.extent = {1.0};
  CHECK(mean_curvature_at_origin(spec) == doctest::Approx(0.0));
}

TEST_CASE("dirichlet energy on a single node") {
  DomainSpec spec;
  spec.kind = DomainKind::Box;
  spec.dim = 3;
  spec.extent = {1.0, 1.0, 1.0};
  auto g = std::make_shared<Grid>(Grid::build(spec, 0.5));
  Field u(g);
  CHECK(dirichlet_energy(u) == 0.0);
  u[0] = 2.0;
  CHECK(dirichlet_energy(u) == doctest::Approx(3.0 * 4.0));  // 3 v^2
}

TEST_CASE("dirichlet energy matches dense oracle and is homogeneous") {
  auto g = half_grid(1.0, 0.25);
  const Field u = random_on(g, 11);
  // oracle: loop over every lattice edge of the bounding box
  const double h = g->spacing();
  double oracle = 0.0;
  auto value_at = [&](int i, int j, int k) {
    int idx[3] = {i, j, k};
    const std::size_t n = g->interior_at(idx);
    return n == Grid::npos ? 0.0 : u[n];
  };
  for (int i = -5; i <= 4; ++i)
    for (int j = -5; j <= 4; ++j)
      for (int k = -5; k <= 4; ++k) {
        const double v = value_at(i, j, k);
        const double dx = value_at(i + 1, j, k) - v;
        const double dy = value_at(i, j + 1, k) - v;
        const double dz = value_at(i, j, k + 1) - v;
        oracle += (dx * dx + dy * dy + dz * dz) * h;
      }
  CHECK(dirichlet_energy(u) == doctest::Approx(oracle).epsilon(1e-12));

  Field su = u;
  for (std::size_t n = 0; n < su.size(); ++n) su[n] *= -1.7;
  CHECK(dirichlet_energy(su) ==
        doctest::Approx(1.7 * 1.7 * dirichlet_energy(u)).epsilon(1e-12));
  CHECK(dirichlet_energy(u) > 0.0);
}

TEST_CASE("singular integral basics") {
  auto g = half_grid(1.0, 0.5);
  Field u(g);
  CHECK(singular_integral(u, 4.0, 1.0) == 0.0);
  // one-term sum
  u[0] = 3.0;
  const double r = g->radius(0);
  CHECK(singular_integral(u, 4.0, 1.0) ==
        doctest::Approx(std::pow(3.0, 4.0) / r * 0.125));
  // homogeneity
  Field two = u;
  two[0] *= 2.0;
  CHECK(singular_integral(two, 4.0, 1.0) ==
        doctest::Approx(16.0 * singular_integral(u, 4.0, 1.0)));
}

TEST_CASE("discrete Hardy-Sobolev ratio is bounded and h-monotone") {
  const double s = 1.0;
  const double q = 4.0;  // 2*(1) for N=3
  double prev_best = 1e300;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    auto g = half_grid(1.0, h);
    double best = 0.0;
    for (unsigned seed = 0; seed < 200; ++seed) {
      const Field u = random_on(g, seed);
      const double ratio = std::pow(singular_integral(u, q, s), 2.0 / q) /
                           dirichlet_energy(u);
      best = std::max(best, ratio);
    }
    CHECK(best < 10.0);
    CHECK(best <= prev_best + 1e-12);
    prev_best = best;
  }
}

TEST_CASE("field dump format") {
  auto g = half_grid(1.0, 0.5);
  Field u(g);
  for (std::size_t n = 0; n < u.size(); ++n) u[n] = double(n);
  std::ostringstream os;
  dump_field(u, os);
  std::istringstream is(os.str());
  int N;
  double h;
  is >> N >> h;
  CHECK(N == 3);
  CHECK(h == doctest::Approx(0.5));
  int d1, d2, d3;
  is >> d1 >> d2 >> d3;
  CHECK(d1 == 5);
  CHECK(d2 == 5);
  CHECK(d3 == 3);
  std::size_t lines = 0;
  double x, y, z, v;
  while (is >> x >> y >> z >> v) {
    CHECK(v == doctest::Approx(double(lines)));
    ++lines;
  }
  CHECK(lines == u.size());
}
