#pragma once

// Independent reference computations used only by the tests.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "chain3d.hpp"
#include "laurent.hpp"
#include "vec3.hpp"

namespace oracle {

using entangle::Point3;

// Gauss linking integral for two straight segments by nested adaptive Gauss-Kronrod quadrature.
double gauss_integral(Point3 a0, Point3 a1, Point3 b0, Point3 b1);

struct BruteCrossing {
  std::size_t i = 0, j = 0;  // i < j
  bool i_over = false;
  int sign = 0;
};

// All crossings of the projection along xi, found by testing every non-adjacent pair.
std::vector<BruteCrossing> brute_crossings(const entangle::PolyChain& c, Point3 xi);

// Do the projections of two segments along xi cross?
bool projections_cross(Point3 a0, Point3 a1, Point3 b0, Point3 b1, Point3 xi);

// Area of {x : x.w >= 0 for all w} via Girard's theorem on its sorted vertices.
double convex_cell_area(const std::vector<Point3>& normals);

// Cone of directions where the projections of (pi,pi1) and (pj,pj1) cross,
// oriented to contain the midpoint difference; the full region is it plus its antipode.
std::array<Point3, 4> crossing_cone(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1);

// Area of the directions where e_i crosses both e_j and e_j+1.
double joint_area(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1, Point3 pj2);

struct E4Truth {
  double q134 = 0.0, q421 = 0.0, triple = 0.0, q1 = 0.0, q2 = 0.0;  // probabilities
};
E4Truth e4_truth(const std::vector<Point3>& p);

// Uniform direction by normalising a Gaussian vector.
Point3 gaussian_direction(std::mt19937_64& rng);

struct Fraction {
  double p = 0.0;
  double se = 0.0;
};
Fraction sphere_fraction(const std::function<bool(Point3)>& inside, std::size_t n, std::uint64_t seed);

// Kauffman bracket from a planar-diagram code X[a,b,c,d] by smoothing every crossing.
entangle::LaurentPoly pd_bracket(const std::vector<std::array<int, 4>>& pd);

std::vector<Point3> random_points(std::mt19937_64& rng, std::size_t n);

// Random 4-edge open chain with vertices uniform in the unit cube whose finite
// forms are well-conditioned (degenerate draws rejected).
entangle::PolyChain random_e4(std::mt19937_64& rng);

}  // namespace oracle
