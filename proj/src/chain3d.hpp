#pragma once

#include <cstddef>
#include <vector>

#include "vec3.hpp"

namespace entangle {

struct PolyChain {
  std::vector<Point3> vertices;
  bool closed = false;

  std::size_t edge_count() const {
    return closed ? vertices.size() : (vertices.empty() ? 0 : vertices.size() - 1);
  }
  Point3 edge_start(std::size_t i) const { return vertices[i]; }
  Point3 edge_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
};

// Throws InvalidArgument / DegenerateGeometry naming the offending vertices.
PolyChain make_chain(std::vector<Point3> vertices, bool closed);
void validate_chain(const PolyChain& c);

// Same curve traversed backwards.
PolyChain reversed(const PolyChain& c);

bool edges_adjacent(const PolyChain& c, std::size_t i, std::size_t j);

// Sign of (e_i x e_j) . (p_i - p_j); 0 for (near) coplanar pairs.
int crossing_sign(Point3 a0, Point3 a1, Point3 b0, Point3 b1);
int crossing_sign(const PolyChain& c, std::size_t i, std::size_t j);

struct EdgeLinking {
  double value = 0.0;
  bool degenerate = false;
};

EdgeLinking edge_linking(Point3 a0, Point3 a1, Point3 b0, Point3 b1);
EdgeLinking edge_linking(const PolyChain& c, std::size_t i, std::size_t j);

double segment_distance(Point3 a0, Point3 a1, Point3 b0, Point3 b1);

double gauss_linking(const PolyChain& a, const PolyChain& b);
double writhe(const PolyChain& c);
double acn(const PolyChain& c);

}  // namespace entangle
