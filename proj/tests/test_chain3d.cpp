#include <doctest.h>

#include <cmath>
#include <random>

#include "chain3d.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace entangle;

namespace {

PolyChain square(Point3 origin, Point3 u, Point3 v) {
  return make_chain({origin, origin + u, origin + u + v, origin + v}, true);
}

Point3 rotate(Point3 p, double a, double b) {
  const Point3 q{std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y, p.z};
  return {q.x, std::cos(b) * q.y - std::sin(b) * q.z, std::sin(b) * q.y + std::cos(b) * q.z};
}

PolyChain example_t0() {
  return make_chain({{0, 1, 0}, {0, 0, 0}, {-0.2, 0.8, 0.8}, {0.1, 0.8, -0.8}, {0.76, 0.5, 0.19}}, false);
}

}  // namespace

TEST_CASE("crossing sign follows the Gauss integrand") {
  // (e_i x e_j).(p_i - p_j) = (0,0,-2).(0,-1,-1) = 2
  const Point3 a0{0, 0, 0}, a1{1, 0, 0}, b0{0, 1, 1}, b1{1, -1, 1};
  CHECK(crossing_sign(a0, a1, b0, b1) == 1);
  CHECK(oracle::gauss_integral(a0, a1, b0, b1) > 0.0);
  CHECK(crossing_sign({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 2, 0}) == 0);
  auto flip = [](Point3 p) { return Point3{p.x, p.y, -p.z}; };
  CHECK(crossing_sign(flip(a0), flip(a1), flip(b0), flip(b1)) == -1);
}

TEST_CASE("edge linking against quadrature") {
  const Point3 a0{0, 0, 0}, a1{1, 0, 0}, b0{0.5, -0.5, 0.5}, b1{0.5, 0.5, 0.5};
  const EdgeLinking l = edge_linking(a0, a1, b0, b1);
  CHECK_FALSE(l.degenerate);
  CHECK(std::abs(l.value - oracle::gauss_integral(a0, a1, b0, b1)) < 1e-8);

  const EdgeLinking flat = edge_linking({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 2, 0});
  CHECK(flat.value == 0.0);
  CHECK(flat.degenerate);
}

TEST_CASE("edge linking sign, bound and quadrature on random pairs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_points(rng, 4);
    const EdgeLinking l = edge_linking(p[0], p[1], p[2], p[3]);
    REQUIRE_FALSE(l.degenerate);
    CHECK(std::abs(l.value) <= 0.5);
    CHECK((l.value > 0 ? 1 : -1) == crossing_sign(p[0], p[1], p[2], p[3]));
    CHECK(std::abs(l.value - oracle::gauss_integral(p[0], p[1], p[2], p[3])) < 1e-6);
  }
}

TEST_CASE("gauss linking of squares") {
  const PolyChain a = square({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
  const PolyChain far = square({100, 0, 0}, {1, 0, 0}, {0, 0, 1});
  CHECK(std::abs(gauss_linking(a, far)) < 1e-6);

  const PolyChain h1 = square({0, 0, 0}, {2, 0, 0}, {0, 2, 0});
  const PolyChain h2 = square({1, 1, -1}, {2, 0, 0}, {0, 0, 2});
  const double lk = gauss_linking(h1, h2);
  CHECK(std::abs(std::abs(lk) - 1.0) < 1e-9);
  CHECK(gauss_linking(h1, reversed(h2)) == -lk);
  CHECK(std::abs(gauss_linking(h2, h1) - lk) < 1e-12);

  // Vertex-preserving subdivision keeps the integer.
  PolyChain fine = h2;
  fine.vertices.insert(fine.vertices.begin() + 1, Point3{2, 1, -1});
  fine.vertices.insert(fine.vertices.begin() + 3, Point3{3, 1, 0.3});
  CHECK(std::abs(gauss_linking(h1, fine) - lk) < 1e-9);

  // Rigid motion.
  PolyChain r1 = h1, r2 = h2;
  for (auto* c : {&r1, &r2})
    for (Point3& p : c->vertices) p = rotate(p, 0.7, -1.3) + Point3{3, -2, 5};
  CHECK(std::abs(gauss_linking(r1, r2) - lk) < 1e-9);
}

TEST_CASE("touching chains are rejected") {
  const PolyChain a = square({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
  const PolyChain b = square({0.5, 0, 0}, {0, 0, 1}, {0, -1, 0});
  CHECK_THROWS_AS(gauss_linking(a, b), DegenerateGeometry);
}

TEST_CASE("writhe and acn") {
  const PolyChain planar = make_chain({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, -1, 0}, {2, 3, 0}}, false);
  CHECK(writhe(planar) == 0.0);
  CHECK(acn(planar) == 0.0);

  const PolyChain c = example_t0();
  double quad = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 2; j < 4; ++j)
      quad += 2.0 * oracle::gauss_integral(c.edge_start(i), c.edge_end(i), c.edge_start(j), c.edge_end(j));
  CHECK(std::abs(writhe(c) - quad) < 1e-6);

  PolyChain m = c;
  for (Point3& p : m.vertices) p.z = -p.z;
  CHECK(std::abs(writhe(m) + writhe(c)) < 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const PolyChain r = make_chain(oracle::random_points(rng, 8), trial % 2 == 0);
    CHECK(acn(r) >= std::abs(writhe(r)) - 1e-15);
  }
}

TEST_CASE("closed 4-gon acn is the two pair terms") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyChain c = make_chain(oracle::random_points(rng, 4), true);
    const double expect = 2 * std::abs(edge_linking(c, 0, 2).value) + 2 * std::abs(edge_linking(c, 1, 3).value);
    CHECK(acn(c) == expect);
  }
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(make_chain({{0, 0, 0}}, false), InvalidArgument);
  CHECK_THROWS_AS(make_chain({{0, 0, 0}, {1, 0, 0}}, true), InvalidArgument);
  CHECK_THROWS_AS(make_chain({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {2, 0, 0}}, false), DegenerateGeometry);
  CHECK_THROWS_WITH_AS(make_chain({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 0}}, true), "vertices 3 and 0 coincide",
                       DegenerateGeometry);
  CHECK_THROWS_AS(make_chain({{0, 0, 0}, {NAN, 0, 0}}, false), InvalidArgument);
  CHECK(make_chain({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}, false).edge_count() == 2);
  CHECK(edges_adjacent(make_chain({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 1}}, true), 0, 3));
}
