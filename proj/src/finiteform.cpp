#include "finiteform.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"

namespace entangle {

namespace {

constexpr double kGuard = 1e-10;
constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::size_t kCheckSamples = 1000;

double guarded(double v, const char* name) {
  if (std::abs(v) < kGuard) throw DegenerateGeometry(std::string("ambiguous case: ") + name + " is numerically zero");
  return v;
}

// Sign-carrying value ((p_b - p_a) . n) * eps, scale free.
double cval(Point3 pa, Point3 pb, Point3 n, int eps, const char* name) {
  return guarded(dot(normalized(pb - pa), n) * eps, name);
}

double prob(double area) { return area / kTwoPi; }

double pair_probability(const PolyChain& c, std::size_t i, std::size_t j) {
  return 2.0 * std::abs(edge_linking(c, i, j).value);
}

void require(const PolyChain& c, bool closed, std::size_t edges, const char* what) {
  validate_chain(c);
  if (c.closed != closed || c.edge_count() != edges) throw InvalidArgument(std::string(what));
}

SphericalPolygon cell(const std::vector<Point3>& ws) { return polygon_from_normals(ws); }

// sub (or its antipode) must lie inside sup.
void check_subset(const SphericalPolygon& sub, const SphericalPolygon& sup, const char* what) {
  if (sub.empty()) return;
  const auto pts = interior_samples(sub, kCheckSamples, 7);
  for (double s : {1.0, -1.0}) {
    bool ok = true;
    for (const Point3& x : pts)
      if (!contains(sup, s * x, 1e-7)) {
        ok = false;
        break;
      }
    if (ok) return;
  }
  throw InternalError(std::string("containment check failed: ") + what);
}

void check_disjoint(const SphericalPolygon& a, const SphericalPolygon& b, const char* what) {
  if (a.empty() || b.empty()) return;
  for (const Point3& x : interior_samples(a, kCheckSamples, 11))
    if (contains(b, x, -1e-7)) throw InternalError(std::string("disjointness check failed: ") + what);
}

struct Normals4 {
  QuadNormals n, u, v;
};

Normals4 normals4(const std::vector<Point3>& p) {
  return {quad_normals(p[0], p[1], p[2], p[3]), quad_normals(p[0], p[1], p[3], p[4]),
          quad_normals(p[1], p[2], p[3], p[4])};
}

struct Discriminants {
  double w = 0.0;
  double w0 = 0.0;
};

// w and w0 of the triple (e_i; e_j, e_j+1).
Discriminants discriminants(const QuadNormals& n, const QuadNormals& u, Point3 v3) {
  const Point3 n1 = n.n[0], n2 = n.n[1], n3 = n.n[2], n4 = n.n[3];
  const Point3 u2 = u.n[1];
  return {dot(cross(u2, -n2), cross(u2, n4)), dot(cross(v3, -n1), cross(v3, n3))};
}

struct BiRegion {
  SphericalPolygon polygon;
  double area = 0.0;
};

// Directions giving the k2.1 diagram of pattern B(i) on the 5 vertices p.
BiRegion k21_bi(const std::vector<Point3>& p) {
  const int e13 = crossing_sign(p[0], p[1], p[2], p[3]);
  const int e14 = crossing_sign(p[0], p[1], p[3], p[4]);
  if (e13 == 0 || e13 != e14) return {};
  const Normals4 q = normals4(p);
  const Point3 n1 = q.n.n[0];
  const Point3 u2 = q.u.n[1];
  const Point3 v2 = q.v.n[1], v3 = q.v.n[2];
  const Discriminants d = discriminants(q.n, q.u, v3);
  if (guarded(d.w, "w") > 0.0 || guarded(d.w0, "w0") > 0.0) return {};
  const double c41 = cval(p[4], p[1], n1, e13, "c_4,1");
  BiRegion r;
  r.polygon = c41 < 0.0 ? cell({v3, -v2, -u2}) : cell({v3, -v2, n1, -u2});
  r.area = spherical_area(r.polygon);
  return r;
}

std::vector<Point3> side_part(double a, double b, Point3 plus, Point3 minus, bool right) {
  if (a > 0 && b > 0) return {plus};
  if (a < 0 && b < 0) return {minus};
  if (a > 0) return right ? std::vector<Point3>{plus, minus} : std::vector<Point3>{minus, plus};
  return right ? std::vector<Point3>{minus, plus} : std::vector<Point3>{plus, minus};
}

// A(Q_1): directions where e1 crosses e3 and e4 but e2 does not cross e4.
double q1_area(const std::vector<Point3>& p, const JointRegion& q134) {
  const int e13 = crossing_sign(p[0], p[1], p[2], p[3]);
  const int e14 = crossing_sign(p[0], p[1], p[3], p[4]);
  const Normals4 q = normals4(p);
  const Point3 n1 = q.n.n[0], n2 = q.n.n[1], n3 = q.n.n[2], n4 = q.n.n[3];
  const Point3 u1 = q.u.n[0], u2 = q.u.n[1], u3 = q.u.n[2];
  const Point3 v1 = q.v.n[0], v2 = q.v.n[1], v3 = q.v.n[2];
  const Discriminants d = discriminants(q.n, q.u, v3);
  const double w = guarded(d.w, "w");

  if (e13 == e14) {
    if (w > 0.0 || guarded(d.w0, "w0") > 0.0) return 0.0;
    const double c30 = cval(p[3], p[0], n3, e13, "c_3,0");
    const double c40 = cval(p[4], p[0], n3, e13, "c_4,0");
    std::vector<Point3> ws{n4, -v3, -u2};
    for (const Point3& x : side_part(c30, c40, n3, -u1, false)) ws.push_back(x);
    const SphericalPolygon part = cell(ws);
    const BiRegion bi = k21_bi(p);
    check_disjoint(bi.polygon, part, "Q and the rest of Q_1");
    check_subset(part, q134.polygon, "Q_1 inside Q_1,3,4");
    return spherical_area(part) + bi.area;
  }

  const double c40 = cval(p[4], p[0], n1, e13, "c_4,0");
  const double c41 = cval(p[4], p[1], n3, e13, "c_4,1");
  auto minus = [&](std::vector<Point3> ws) {
    const SphericalPolygon sub = cell(ws);
    check_subset(sub, q134.polygon, "subtracted cell inside Q_1,3,4");
    return q134.area - spherical_area(sub);
  };
  if (w < 0.0) {
    if (c40 > 0 && c41 > 0) return minus({v1, v2, v3, n2});
    if (c40 < 0 && c41 > 0) return minus({v1, v2, n1, n2});
    return q134.area;
  }
  if (c40 > 0 && c41 > 0) return minus({-u3, n4, v3, n2});
  if (c40 < 0 && c41 < 0) return minus({v3, v2, n2, n1, n4});
  if (c40 < 0 && c41 > 0) return 0.0;
  return q134.area;
}

std::vector<Point3> points(const PolyChain& c) { return c.vertices; }

}  // namespace

LaurentPoly bracket_e3(const PolyChain& chain) {
  require(chain, false, 3, "bracket_e3 needs a 3-edge open chain");
  const int e13 = crossing_sign(chain, 0, 2);
  if (e13 == 0) return LaurentPoly::constant(1.0);
  const double p = pair_probability(chain, 0, 2);
  return kink_factor(e13).scaled(p) + LaurentPoly::constant(1.0 - p);
}

LaurentPoly bracket_p4_closed(const PolyChain& chain) {
  require(chain, true, 4, "bracket_p4_closed needs a closed 4-edge chain");
  const int e13 = crossing_sign(chain, 0, 2);
  const int e24 = crossing_sign(chain, 1, 3);
  const double p13 = e13 ? pair_probability(chain, 0, 2) : 0.0;
  const double p24 = e24 ? pair_probability(chain, 1, 3) : 0.0;
  if (e13 && e24 && e13 != -e24) throw InternalError("closed 4-gon with equal crossing signs on both pairs");
  LaurentPoly out = LaurentPoly::constant(1.0 - p13 - p24);
  if (e13) out += kink_factor(e13).scaled(p13);
  if (e24) out += kink_factor(e24).scaled(p24);
  return out;
}

LaurentPoly jones_e3(const PolyChain& chain) {
  require(chain, false, 3, "jones_e3 needs a 3-edge open chain");
  return LaurentPoly::constant(1.0);
}

JointRegion q_joint(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1, Point3 pj2) {
  JointRegion out;
  const int eij = crossing_sign(pi, pi1, pj, pj1);
  const int eij1 = crossing_sign(pi, pi1, pj1, pj2);
  if (eij == 0 || eij1 == 0) {
    out.row = "coplanar pair";
    return out;
  }
  const QuadNormals n = quad_normals(pi, pi1, pj, pj1);
  const QuadNormals u = quad_normals(pi, pi1, pj1, pj2);
  const auto v3c = cross(pj - pj2, pj - pj1);
  if (norm(v3c) < 1e-12 * norm(pj - pj2) * norm(pj - pj1))
    throw DegenerateGeometry("edges e_j and e_j+1 are collinear");
  const Point3 v3 = normalized(v3c);
  const Point3 n1 = n.n[0], n2 = n.n[1], n3 = n.n[2], n4 = n.n[3];
  const Point3 u1 = u.n[0], u2 = u.n[1], u3 = u.n[2];
  const Discriminants d = discriminants(n, u, v3);
  const double w = guarded(d.w, "w");

  std::vector<Point3> ws;
  if (eij == eij1) {
    if (w > 0.0 || guarded(d.w0, "w0") > 0.0) {
      out.row = "equal signs, empty";
      return out;
    }
    const double c11 = cval(pj1, pi1, n1, eij, "c_j+1,i+1");
    const double c21 = cval(pj2, pi1, n1, eij, "c_j+2,i+1");
    const double c10 = cval(pj1, pi, n3, eij, "c_j+1,i");
    const double c20 = cval(pj2, pi, n3, eij, "c_j+2,i");
    ws.push_back(n4);
    for (const Point3& x : side_part(c11, c21, n1, -u3, true)) ws.push_back(x);
    ws.push_back(-u2);
    for (const Point3& x : side_part(c10, c20, n3, -u1, false)) ws.push_back(x);
    out.row = std::string("equal signs, c_j+1,i+1") + (c11 > 0 ? ">0" : "<0") + " c_j+2,i+1" +
              (c21 > 0 ? ">0" : "<0") + " c_j+1,i" + (c10 > 0 ? ">0" : "<0") + " c_j+2,i" +
              (c20 > 0 ? ">0" : "<0");
  } else {
    const double c2i = cval(pj2, pi, n1, eij, "c_j+2,i");
    const double c2i1 = cval(pj2, pi1, n3, eij, "c_j+2,i+1");
    ws = {n2, c2i > 0 ? -u1 : n1, w < 0 ? -u2 : n4, c2i1 > 0 ? -u3 : n3};
    out.row = std::string("opposite signs, w") + (w < 0 ? "<0" : ">0") + " c_j+2,i" + (c2i > 0 ? ">0" : "<0") +
              " c_j+2,i+1" + (c2i1 > 0 ? ">0" : "<0");
  }
  out.polygon = cell(ws);
  out.area = spherical_area(out.polygon);
  return out;
}

K21Probability p_k21(const PolyChain& chain) {
  require(chain, false, 4, "p_k21 needs a 4-edge open chain");
  const auto p = points(chain);
  const auto r = points(reversed(chain));
  K21Probability out;
  out.p_bi = prob(k21_bi(p).area);
  out.p_bii = prob(k21_bi(r).area);
  if (out.p_bi > 0.0 && out.p_bii > 0.0) throw InternalError("both B(i) and B(ii) realize k2.1");
  out.probability = out.p_bi + out.p_bii;
  if (out.p_bi > 0.0) {
    out.which = K21Case::bi;
    out.writhe_sign = crossing_sign(chain, 0, 2);
  } else if (out.p_bii > 0.0) {
    out.which = K21Case::bii;
    out.writhe_sign = crossing_sign(chain, 1, 3);
  }
  return out;
}

double E4Probabilities::total() const {
  double s = 0.0;
  for (const auto& [w, v] : k0) s += v;
  return s + k21_total();
}

double E4Probabilities::k21_total() const {
  double s = 0.0;
  for (const auto& [w, v] : k21) s += v;
  return s;
}

E4Result bracket_e4(const PolyChain& chain) {
  require(chain, false, 4, "bracket_e4 needs a 4-edge open chain");
  const auto p = points(chain);
  const auto r = points(reversed(chain));
  const int e13 = crossing_sign(chain, 0, 2);
  const int e14 = crossing_sign(chain, 0, 3);
  const int e24 = crossing_sign(chain, 1, 3);
  const double a13 = e13 ? pair_probability(chain, 0, 2) : 0.0;
  const double a14 = e14 ? pair_probability(chain, 0, 3) : 0.0;
  const double a24 = e24 ? pair_probability(chain, 1, 3) : 0.0;

  // Joint regions; a coplanar pair has an empty crossing region.
  JointRegion j134, j421;
  if (e13 && e14) j134 = q_joint(p[0], p[1], p[2], p[3], p[4]);
  if (e24 && e14) j421 = q_joint(r[0], r[1], r[2], r[3], r[4]);
  const double q134 = prob(j134.area);
  const double q421 = prob(j421.area);
  double q1 = q134, q2 = q421;
  if (e13 && e14 && e24) {
    q1 = prob(q1_area(p, j134));
    q2 = prob(q1_area(r, j421));
  }
  const double c = q134 - q1;
  if (std::abs(c - (q421 - q2)) > 1e-8)
    throw InternalError("triple-crossing probability differs between the chain and its reverse");

  const K21Probability k = p_k21(chain);

  E4Result out;
  auto& k0 = out.probabilities.k0;
  auto add = [&](int w, double v) { k0[w] += v; };
  add(e13, a13 - q134);
  add(e24, a24 - q421);
  add(e14, a14 - q134 - q421 + c);
  add(e13 + e14 + e24, c);
  add(e13 + e14, q1 - k.p_bi);
  add(e14 + e24, q2 - k.p_bii);
  if (k.p_bi > 0.0) out.probabilities.k21[2 * e13] += k.p_bi;
  if (k.p_bii > 0.0) out.probabilities.k21[2 * e24] += k.p_bii;
  double rest = 1.0;
  for (const auto& [w, v] : k0) rest -= v;
  rest -= out.probabilities.k21_total();
  k0[0] += rest;

  for (auto it = k0.begin(); it != k0.end();) {
    if (it->second < -1e-9 || it->second > 1.0 + 1e-9)
      throw InternalError("probability of k0 with writhe " + std::to_string(it->first) + " is " +
                          std::to_string(it->second));
    if (std::abs(it->second) < 1e-15)
      it = k0.erase(it);
    else
      ++it;
  }

  for (const auto& [w, v] : k0) out.bracket += kink_factor(w).scaled(v);
  for (const auto& [w, v] : out.probabilities.k21) out.bracket += k21_bracket(w).scaled(v);
  return out;
}

LaurentPoly jones_e4(const PolyChain& chain) {
  const K21Probability k = p_k21(chain);
  LaurentPoly f = LaurentPoly::constant(1.0 - k.probability);
  if (k.probability > 0.0)
    f += (kink_factor(-2 * k.writhe_sign) * k21_bracket(k.writhe_sign)).scaled(k.probability);
  return substitute_t(f);
}

std::optional<LaurentPoly> exact_bracket(const PolyChain& chain) {
  validate_chain(chain);
  const std::size_t m = chain.edge_count();
  if (!chain.closed) {
    if (m <= 2) return LaurentPoly::constant(1.0);
    if (m == 3) return bracket_e3(chain);
    if (m == 4) return bracket_e4(chain).bracket;
    return std::nullopt;
  }
  if (m == 3) return LaurentPoly::constant(1.0);
  if (m == 4) return bracket_p4_closed(chain);
  return std::nullopt;
}

std::optional<LaurentPoly> exact_jones(const PolyChain& chain) {
  validate_chain(chain);
  const std::size_t m = chain.edge_count();
  if (!chain.closed) {
    if (m <= 3) return LaurentPoly::constant(1.0);
    if (m == 4) return jones_e4(chain);
    return std::nullopt;
  }
  if (m > 4) return std::nullopt;
  // Closed curves: every generic projection carries the same normalized bracket.
  for (std::uint64_t k = 0; k < 1000; ++k)
    if (auto d = project(chain, sample_direction(0, k))) return substitute_t(normalized_bracket(*d));
  throw ConditioningError("no generic projection found");
}

}  // namespace entangle
