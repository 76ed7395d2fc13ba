#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "vec3.hpp"

namespace entangle {

// Unit normals n1..n4 of the tetrahedron on edges (p_i, p_i+1) and (p_j, p_j+1).
struct QuadNormals {
  std::array<Point3, 4> n;
};

struct Quadrilateral {
  Point3 pi, pi1, pj, pj1;
};

std::optional<QuadNormals> try_quad_normals(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1);
QuadNormals quad_normals(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1);
QuadNormals quad_normals(const Quadrilateral& q);

// Area of Q_ij: sum of arcsin of consecutive normal products.
double quadrangle_area(const QuadNormals& q);
double quadrangle_area(const Quadrilateral& q);

// e_j replaced by its point reflection through the midpoint of e_i.
Quadrilateral antipodal_quadrilateral(const Quadrilateral& q);

// Boundary normals w_k point inwards; vertices[k] lies on w_k and w_k+1.
// Traversal keeps the interior on the left as seen from outside the sphere.
struct SphericalPolygon {
  std::vector<Point3> normals;
  std::vector<Point3> vertices;

  bool empty() const { return normals.empty(); }
  SphericalPolygon reversed() const;
};

// The cell {x : x.w >= 0 for every w}. Listed order does not matter.
SphericalPolygon polygon_from_normals(const std::vector<Point3>& normals);

double spherical_area(const SphericalPolygon& poly);

bool contains(const SphericalPolygon& poly, Point3 x, double tol = 1e-9);

// Deterministic points strictly inside a nonempty polygon (not uniform).
std::vector<Point3> interior_samples(const SphericalPolygon& poly, std::size_t count, std::uint64_t seed);

}  // namespace entangle
