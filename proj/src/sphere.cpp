#include "sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "errors.hpp"

namespace entangle {

namespace {

constexpr double kCrossEps = 1e-12;
constexpr double kHalfspaceTol = 1e-9;
constexpr double kSameVertex = 1e-9;

std::optional<Point3> unit_cross(Point3 a, Point3 b) {
  const Point3 c = cross(a, b);
  const double n = norm(c);
  if (n <= kCrossEps * norm(a) * norm(b) || n == 0.0) return std::nullopt;
  return (1.0 / n) * c;
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

std::optional<QuadNormals> try_quad_normals(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1) {
  const Point3 rij = pi - pj;
  const Point3 rij1 = pi - pj1;
  const Point3 ri1j = pi1 - pj;
  const Point3 ri1j1 = pi1 - pj1;
  const auto n1 = unit_cross(rij, rij1);
  const auto n2 = unit_cross(rij1, ri1j1);
  const auto n3 = unit_cross(ri1j1, ri1j);
  const auto n4 = unit_cross(ri1j, rij);
  if (!n1 || !n2 || !n3 || !n4) return std::nullopt;
  return QuadNormals{{*n1, *n2, *n3, *n4}};
}

QuadNormals quad_normals(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1) {
  const Point3 r[4] = {pi - pj, pi - pj1, pi1 - pj1, pi1 - pj};
  static const char* names[4] = {"r_ij x r_i,j+1", "r_i,j+1 x r_i+1,j+1", "r_i+1,j+1 x r_i+1,j",
                                 "r_i+1,j x r_ij"};
  QuadNormals q;
  for (int k = 0; k < 4; ++k) {
    const auto n = unit_cross(r[k], r[(k + 1) % 4]);
    if (!n) throw DegenerateGeometry(std::string("vanishing cross product ") + names[k]);
    q.n[k] = *n;
  }
  return q;
}

QuadNormals quad_normals(const Quadrilateral& q) { return quad_normals(q.pi, q.pi1, q.pj, q.pj1); }

double quadrangle_area(const QuadNormals& q) {
  double a = 0.0;
  for (int k = 0; k < 4; ++k) a += std::asin(clamp_unit(dot(q.n[k], q.n[(k + 1) % 4])));
  return std::abs(a);
}

double quadrangle_area(const Quadrilateral& q) { return quadrangle_area(quad_normals(q)); }

Quadrilateral antipodal_quadrilateral(const Quadrilateral& q) {
  return {q.pi, q.pi1, q.pi1 - (q.pj - q.pi), q.pi1 - (q.pj1 - q.pi)};
}

SphericalPolygon SphericalPolygon::reversed() const {
  SphericalPolygon r;
  const std::size_t m = normals.size();
  for (std::size_t k = 0; k < m; ++k) {
    r.normals.push_back(-normals[m - 1 - k]);
    r.vertices.push_back(vertices[(2 * m - 2 - k) % m]);
  }
  return r;
}

SphericalPolygon polygon_from_normals(const std::vector<Point3>& input) {
  const std::size_t m = input.size();
  if (m < 2) throw InvalidArgument("a spherical polygon needs at least 2 normals");
  std::vector<Point3> ws;
  for (const Point3& w : input) {
    if (!(norm(w) > 0.0)) throw InvalidArgument("zero normal vector");
    ws.push_back(normalized(w));
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (norm(cross(ws[k], ws[(k + 1) % m])) < 1e-9)
      throw InvalidArgument("consecutive normals " + std::to_string(k) + " and " +
                            std::to_string((k + 1) % m) + " are parallel");
  }

  auto inside = [&](Point3 x) {
    for (const Point3& w : ws)
      if (dot(x, w) < -kHalfspaceTol) return false;
    return true;
  };

  std::vector<Point3> cand;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto c = unit_cross(ws[a], ws[b]);
      if (!c) continue;
      for (double s : {1.0, -1.0}) {
        const Point3 x = s * *c;
        if (!inside(x)) continue;
        const bool dup = std::any_of(cand.begin(), cand.end(),
                                     [&](Point3 y) { return norm(x - y) < kSameVertex; });
        if (!dup) cand.push_back(x);
      }
    }
  }

  SphericalPolygon poly;
  if (cand.size() < 2) return poly;

  auto active = [&](Point3 v) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < m; ++k)
      if (std::abs(dot(v, ws[k])) < kHalfspaceTol) idx.push_back(k);
    return idx;
  };

  Point3 c{};
  for (const Point3& v : cand) c = c + v;
  if (norm(c) < 1e-9) {
    // Lune: two antipodal vertices shared by every active great circle.
    if (cand.size() != 2) return poly;
    const Point3 v = cand[0];
    std::vector<std::size_t> act = active(v);
    // The two extreme circles bound the lune; pick the pair with the smallest interior angle.
    double best = -2.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t a : act)
      for (std::size_t b : act) {
        if (a == b) continue;
        const Point3 ta = cross(ws[a], v);
        const Point3 tb = cross(ws[b], v);
        // b follows a when turning left at v keeps the interior on the left.
        if (dot(v, cross(ta, tb)) <= 0.0) continue;
        const double d = -dot(ws[a], ws[b]);
        if (d > best) {
          best = d;
          ia = a;
          ib = b;
        }
      }
    if (best < -1.5) return poly;
    poly.normals = {ws[ia], ws[ib]};
    poly.vertices = {v, -v};
    return poly;
  }
  if (cand.size() < 3) return poly;

  c = normalized(c);
  const Point3 helper = std::abs(c.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  const Point3 e1 = normalized(cross(helper, c));
  const Point3 e2 = cross(c, e1);
  std::sort(cand.begin(), cand.end(), [&](Point3 a, Point3 b) {
    return std::atan2(dot(a, e2), dot(a, e1)) < std::atan2(dot(b, e2), dot(b, e1));
  });
  // With e1 x e2 = c the angular order is counterclockwise seen from outside.
  const std::size_t k = cand.size();
  std::vector<Point3> edge_normals(k);
  for (std::size_t e = 0; e < k; ++e) {
    const Point3 a = cand[e];
    const Point3 b = cand[(e + 1) % k];
    const Point3 g = cross(a, b);
    double best = -2.0;
    Point3 pick = ws[0];
    for (const Point3& w : ws) {
      const double score = -std::max(std::abs(dot(w, a)), std::abs(dot(w, b)));
      if (score > best || (score == best && dot(w, g) > dot(pick, g))) {
        best = score;
        pick = w;
      }
    }
    edge_normals[e] = pick;
  }
  // Edge e runs cand[e] -> cand[e+1]; vertex between normals k and k+1 is cand[k+1].
  for (std::size_t e = 0; e < k; ++e) {
    poly.normals.push_back(edge_normals[e]);
    poly.vertices.push_back(cand[(e + 1) % k]);
  }
  return poly;
}

double spherical_area(const SphericalPolygon& poly) {
  const std::size_t m = poly.normals.size();
  if (m == 0) return 0.0;
  double turning = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Point3 v = poly.vertices[k];
    const Point3 t_in = cross(poly.normals[k], v);
    const Point3 t_out = cross(poly.normals[(k + 1) % m], v);
    turning += std::atan2(dot(v, cross(t_in, t_out)), dot(t_in, t_out));
  }
  double a = 2.0 * M_PI - turning;
  if (a < 0.0) a = 0.0;
  if (a >= 4.0 * M_PI) a -= 4.0 * M_PI;
  return a;
}

bool contains(const SphericalPolygon& poly, Point3 x, double tol) {
  if (poly.empty()) return false;
  for (const Point3& w : poly.normals)
    if (dot(x, w) < -tol) return false;
  return true;
}

std::vector<Point3> interior_samples(const SphericalPolygon& poly, std::size_t count, std::uint64_t seed) {
  std::vector<Point3> out;
  if (poly.empty()) return out;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  const auto& v = poly.vertices;
  if (v.size() == 2) {
    // Lune: blend the boundary tangents at v0 that point into the other half-space.
    const Point3 a = poly.normals[0], b = poly.normals[1];
    Point3 ta = cross(a, v[0]);
    Point3 tb = cross(b, v[0]);
    if (dot(ta, b) < 0.0) ta = -ta;
    if (dot(tb, a) < 0.0) tb = -tb;
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (std::size_t s = 0; s < count; ++s) {
      const double ang = M_PI * u(rng);
      const double mix = u(rng);
      const Point3 dir = normalized((1.0 - mix) * normalized(ta) + mix * normalized(tb));
      out.push_back(normalized(std::cos(ang) * v[0] + std::sin(ang) * dir));
    }
    return out;
  }
  Point3 c{};
  for (const Point3& p : v) c = c + p;
  c = normalized(c);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t k = s % v.size();
    const double a = expo(rng), b = expo(rng), d = expo(rng);
    const double sum = a + b + d;
    out.push_back(normalized((a / sum) * c + (b / sum) * v[k] + (d / sum) * v[(k + 1) % v.size()]));
  }
  return out;
}

}  // namespace entangle
