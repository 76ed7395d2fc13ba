#include "chain3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "sphere.hpp"

namespace entangle {

namespace {

constexpr double kMinEdge = 1e-12;
constexpr double kDegenerate = 1e-12;

}  // namespace

void validate_chain(const PolyChain& c) {
  const std::size_t n = c.vertices.size();
  if (c.closed && n < 3) throw InvalidArgument("closed chain needs at least 3 vertices");
  if (!c.closed && n < 2) throw InvalidArgument("open chain needs at least 2 vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (!finite(c.vertices[i]))
      throw InvalidArgument("vertex " + std::to_string(i) + " has a non-finite coordinate");
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (norm(c.edge_end(i) - c.edge_start(i)) <= kMinEdge)
      throw DegenerateGeometry("vertices " + std::to_string(i) + " and " +
                               std::to_string((i + 1) % n) + " coincide");
  }
}

PolyChain make_chain(std::vector<Point3> vertices, bool closed) {
  PolyChain c{std::move(vertices), closed};
  validate_chain(c);
  return c;
}

PolyChain reversed(const PolyChain& c) {
  PolyChain r = c;
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

bool edges_adjacent(const PolyChain& c, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (j - i <= 1) return true;
  return c.closed && i == 0 && j + 1 == c.edge_count();
}

int crossing_sign(Point3 a0, Point3 a1, Point3 b0, Point3 b1) {
  const Point3 ea = a1 - a0;
  const Point3 eb = b1 - b0;
  const Point3 r = a0 - b0;
  const double t = dot(cross(ea, eb), r);
  const double scale = norm(ea) * norm(eb) * std::max({norm(r), norm(a1 - b1), norm(a0 - b1), norm(a1 - b0)});
  if (std::abs(t) <= kDegenerate * scale) return 0;
  return t > 0 ? 1 : -1;
}

int crossing_sign(const PolyChain& c, std::size_t i, std::size_t j) {
  return crossing_sign(c.edge_start(i), c.edge_end(i), c.edge_start(j), c.edge_end(j));
}

EdgeLinking edge_linking(Point3 a0, Point3 a1, Point3 b0, Point3 b1) {
  const int s = crossing_sign(a0, a1, b0, b1);
  if (s == 0) return {0.0, true};
  const auto q = try_quad_normals(a0, a1, b0, b1);
  if (!q) return {0.0, true};
  return {s * quadrangle_area(*q) / (4.0 * M_PI), false};
}

EdgeLinking edge_linking(const PolyChain& c, std::size_t i, std::size_t j) {
  return edge_linking(c.edge_start(i), c.edge_end(i), c.edge_start(j), c.edge_end(j));
}

double segment_distance(Point3 p0, Point3 p1, Point3 q0, Point3 q1) {
  // Closest points of two segments (clamped parametric minimisation).
  const Point3 d1 = p1 - p0;
  const Point3 d2 = q1 - q0;
  const Point3 r = p0 - q0;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  const double c = dot(d1, r);
  const double b = dot(d1, d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-300 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return norm((p0 + s * d1) - (q0 + t * d2));
}

double gauss_linking(const PolyChain& a, const PolyChain& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    for (std::size_t j = 0; j < b.edge_count(); ++j) {
      const Point3 a0 = a.edge_start(i), a1 = a.edge_end(i);
      const Point3 b0 = b.edge_start(j), b1 = b.edge_end(j);
      if (segment_distance(a0, a1, b0, b1) <= 1e-12)
        throw DegenerateGeometry("edge " + std::to_string(i) + " of the first chain touches edge " +
                                 std::to_string(j) + " of the second");
      sum += edge_linking(a0, a1, b0, b1).value;
    }
  }
  return sum;
}

namespace {

template <class F>
double self_sum(const PolyChain& c, F term) {
  double sum = 0.0;
  const std::size_t m = c.edge_count();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 2; j < m; ++j)
      if (!edges_adjacent(c, i, j)) sum += term(edge_linking(c, i, j).value);
  return sum;
}

}  // namespace

double writhe(const PolyChain& c) {
  return self_sum(c, [](double l) { return 2.0 * l; });
}

double acn(const PolyChain& c) {
  return self_sum(c, [](double l) { return 2.0 * std::abs(l); });
}

}  // namespace entangle
