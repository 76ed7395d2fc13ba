#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <gsl/gsl_integration.h>

#include "errors.hpp"
#include "finiteform.hpp"

namespace oracle {

using entangle::cross;
using entangle::dot;
using entangle::norm;
using entangle::normalized;

namespace {

struct Segs {
  Point3 a0, da, b0, db;
  double s = 0.0;
  gsl_integration_workspace* inner = nullptr;
};

double integrand(double t, void* p) {
  auto* g = static_cast<Segs*>(p);
  const Point3 x = g->a0 + g->s * g->da;
  const Point3 y = g->b0 + t * g->db;
  const Point3 r = x - y;
  const double d = norm(r);
  return dot(cross(g->da, g->db), r) / (d * d * d);
}

double outer(double s, void* p) {
  auto* g = static_cast<Segs*>(p);
  g->s = s;
  gsl_function f{&integrand, g};
  double v = 0.0, err = 0.0;
  gsl_integration_qag(&f, 0.0, 1.0, 1e-13, 1e-11, 2000, GSL_INTEG_GAUSS61, g->inner, &v, &err);
  return v;
}

}  // namespace

double gauss_integral(Point3 a0, Point3 a1, Point3 b0, Point3 b1) {
  Segs g{a0, a1 - a0, b0, b1 - b0};
  g.inner = gsl_integration_workspace_alloc(2000);
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
  gsl_function f{&outer, &g};
  double v = 0.0, err = 0.0;
  gsl_integration_qag(&f, 0.0, 1.0, 1e-12, 1e-10, 2000, GSL_INTEG_GAUSS61, w, &v, &err);
  gsl_integration_workspace_free(w);
  gsl_integration_workspace_free(g.inner);
  return v / (4.0 * M_PI);
}

namespace {

void plane_basis(Point3 xi, Point3& u, Point3& v) {
  // Deliberately a different in-plane basis from the library's.
  const Point3 h = std::abs(xi.z) < 0.8 ? Point3{0, 0, 1} : Point3{0, 1, 0};
  u = normalized(cross(xi, h));
  v = cross(xi, u);
}

bool seg_intersect(Point3 a0, Point3 a1, Point3 b0, Point3 b1, Point3 xi, double& s, double& t) {
  Point3 u, v;
  plane_basis(xi, u, v);
  const double ax = dot(a0, u), ay = dot(a0, v), bx = dot(b0, u), by = dot(b0, v);
  const double dax = dot(a1 - a0, u), day = dot(a1 - a0, v);
  const double dbx = dot(b1 - b0, u), dby = dot(b1 - b0, v);
  const double den = dax * dby - day * dbx;
  if (den == 0.0) return false;
  const double wx = bx - ax, wy = by - ay;
  s = (wx * dby - wy * dbx) / den;
  t = (wx * day - wy * dax) / den;
  return s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0;
}

}  // namespace

bool projections_cross(Point3 a0, Point3 a1, Point3 b0, Point3 b1, Point3 xi) {
  double s = 0, t = 0;
  return seg_intersect(a0, a1, b0, b1, xi, s, t);
}

std::vector<BruteCrossing> brute_crossings(const entangle::PolyChain& c, Point3 xi) {
  std::vector<BruteCrossing> out;
  const std::size_t m = c.edge_count();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (entangle::edges_adjacent(c, i, j)) continue;
      const Point3 a0 = c.edge_start(i), a1 = c.edge_end(i), b0 = c.edge_start(j), b1 = c.edge_end(j);
      double s = 0, t = 0;
      if (!seg_intersect(a0, a1, b0, b1, xi, s, t)) continue;
      const double hi = dot(a0 + s * (a1 - a0), xi);
      const double hj = dot(b0 + t * (b1 - b0), xi);
      BruteCrossing x;
      x.i = i;
      x.j = j;
      x.i_over = hi > hj;
      const Point3 over = x.i_over ? a1 - a0 : b1 - b0;
      const Point3 under = x.i_over ? b1 - b0 : a1 - a0;
      x.sign = dot(cross(over, under), xi) > 0 ? 1 : -1;
      out.push_back(x);
    }
  return out;
}

double convex_cell_area(const std::vector<Point3>& input) {
  std::vector<Point3> ws;
  for (const Point3& w : input) ws.push_back(normalized(w));
  std::vector<Point3> cand;
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = a + 1; b < ws.size(); ++b) {
      const Point3 c = cross(ws[a], ws[b]);
      if (norm(c) < 1e-14) continue;
      for (double s : {1.0, -1.0}) {
        const Point3 x = s * normalized(c);
        bool ok = true;
        for (const Point3& w : ws) ok = ok && dot(x, w) >= -1e-10;
        if (!ok) continue;
        bool dup = false;
        for (const Point3& y : cand) dup = dup || norm(x - y) < 1e-9;
        if (!dup) cand.push_back(x);
      }
    }
  if (cand.size() < 3) return 0.0;
  Point3 c{};
  for (const Point3& x : cand) c = c + x;
  c = normalized(c);
  const Point3 e1 = normalized(cross(c, std::abs(c.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0}));
  const Point3 e2 = cross(c, e1);
  std::sort(cand.begin(), cand.end(), [&](Point3 a, Point3 b) {
    return std::atan2(dot(a, e2), dot(a, e1)) < std::atan2(dot(b, e2), dot(b, e1));
  });
  const std::size_t k = cand.size();
  double angles = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    const Point3 v = cand[m], p = cand[(m + k - 1) % k], q = cand[(m + 1) % k];
    const Point3 tp = normalized(p - dot(p, v) * v);
    const Point3 tq = normalized(q - dot(q, v) * v);
    angles += std::acos(std::clamp(dot(tp, tq), -1.0, 1.0));
  }
  return angles - (static_cast<double>(k) - 2.0) * M_PI;
}

std::array<Point3, 4> crossing_cone(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1) {
  const Point3 r[4] = {pi - pj, pi - pj1, pi1 - pj1, pi1 - pj};
  const Point3 d = 0.5 * (pi + pi1) - 0.5 * (pj + pj1);
  std::array<Point3, 4> out;
  for (int k = 0; k < 4; ++k) {
    const Point3 n = normalized(cross(r[k], r[(k + 1) % 4]));
    out[k] = dot(n, d) > 0 ? n : -n;
  }
  return out;
}

namespace {

std::vector<Point3> cat(std::initializer_list<std::array<Point3, 4>> parts, std::initializer_list<double> signs) {
  std::vector<Point3> out;
  auto s = signs.begin();
  for (const auto& p : parts) {
    for (const Point3& x : p) out.push_back(*s * x);
    ++s;
  }
  return out;
}

}  // namespace

double joint_area(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1, Point3 pj2) {
  const auto a = crossing_cone(pi, pi1, pj, pj1);
  const auto b = crossing_cone(pi, pi1, pj1, pj2);
  return convex_cell_area(cat({a, b}, {1.0, 1.0})) + convex_cell_area(cat({a, b}, {-1.0, 1.0}));
}

E4Truth e4_truth(const std::vector<Point3>& p) {
  const auto r13 = crossing_cone(p[0], p[1], p[2], p[3]);
  const auto r14 = crossing_cone(p[0], p[1], p[3], p[4]);
  const auto r24 = crossing_cone(p[1], p[2], p[3], p[4]);
  E4Truth t;
  const double tp = 2.0 * M_PI;
  for (double s : {1.0, -1.0}) {
    t.q134 += convex_cell_area(cat({r13, r14}, {s, 1.0})) / tp;
    t.q421 += convex_cell_area(cat({r24, r14}, {s, 1.0})) / tp;
    for (double u : {1.0, -1.0}) t.triple += convex_cell_area(cat({r13, r14, r24}, {s, 1.0, u})) / tp;
  }
  t.q1 = t.q134 - t.triple;
  t.q2 = t.q421 - t.triple;
  return t;
}

Point3 gaussian_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Point3 x{g(rng), g(rng), g(rng)};
    const double n = norm(x);
    if (n > 1e-9) return (1.0 / n) * x;
  }
}

Fraction sphere_fraction(const std::function<bool(Point3)>& inside, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (inside(gaussian_direction(rng))) ++hits;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(n)) / static_cast<double>(n))};
}

entangle::LaurentPoly pd_bracket(const std::vector<std::array<int, 4>>& pd) {
  int max_label = 0;
  for (const auto& x : pd)
    for (int l : x) max_label = std::max(max_label, l);
  const entangle::LaurentPoly d = entangle::loop_value();
  entangle::LaurentPoly total;
  const std::size_t c = pd.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
    std::vector<int> parent(max_label + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    int sigma = 0;
    for (std::size_t k = 0; k < c; ++k) {
      const auto& x = pd[k];
      if (((s >> k) & 1) == 0) {
        ++sigma;
        unite(x[0], x[1]);
        unite(x[2], x[3]);
      } else {
        --sigma;
        unite(x[0], x[3]);
        unite(x[1], x[2]);
      }
    }
    int loops = 0;
    for (int l = 1; l <= max_label; ++l)
      if (find(l) == l) ++loops;
    entangle::LaurentPoly term = entangle::LaurentPoly::mono(1.0, 4 * sigma);
    for (int k = 1; k < loops; ++k) term = term * d;
    total += term;
  }
  return total;
}

std::vector<Point3> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> out(n);
  for (Point3& p : out) p = {u(rng), u(rng), u(rng)};
  return out;
}

entangle::PolyChain random_e4(std::mt19937_64& rng) {
  for (;;) {
    entangle::PolyChain c{random_points(rng, 5), false};
    try {
      entangle::validate_chain(c);
      entangle::bracket_e4(c);
      return c;
    } catch (const entangle::DegenerateGeometry&) {
    }
  }
}

}  // namespace oracle
