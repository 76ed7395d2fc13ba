#include "diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace entangle {

namespace {

constexpr double kGeneric = 1e-9;

struct P2 {
  double u = 0.0;
  double v = 0.0;
};

P2 sub(P2 a, P2 b) { return {a.u - b.u, a.v - b.v}; }
double cross2(P2 a, P2 b) { return a.u * b.v - a.v * b.u; }
double len2(P2 a) { return std::hypot(a.u, a.v); }

bool fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

}  // namespace

std::optional<Diagram> project(const PolyChain& chain, Point3 xi, std::string* why) {
  const double xn = norm(xi);
  if (!(std::abs(xn - 1.0) < 1e-9)) throw InvalidArgument("projection direction must be a unit vector");
  const Point3 helper = std::abs(xi.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  const Point3 e1 = normalized(cross(helper, xi));
  const Point3 e2 = cross(xi, e1);

  const std::size_t n = chain.vertices.size();
  const std::size_t m = chain.edge_count();
  std::vector<P2> q(n);
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    q[k] = {dot(chain.vertices[k], e1), dot(chain.vertices[k], e2)};
    h[k] = dot(chain.vertices[k], xi);
  }
  auto a0 = [&](std::size_t i) { return q[i]; };
  auto a1 = [&](std::size_t i) { return q[(i + 1) % n]; };

  for (std::size_t i = 0; i < m; ++i) {
    const double l3 = norm(chain.edge_end(i) - chain.edge_start(i));
    if (len2(sub(a1(i), a0(i))) < kGeneric * l3) {
      fail(why, "edge " + std::to_string(i) + " projects to a point");
      return std::nullopt;
    }
  }

  Diagram d;
  d.closed = chain.closed;
  d.edge_count = m;

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const P2 da = sub(a1(i), a0(i));
      const P2 db = sub(a1(j), a0(j));
      const double la = len2(da), lb = len2(db);
      const double den = cross2(da, db);
      const bool adjacent = edges_adjacent(chain, i, j);
      if (adjacent) {
        // Adjacent edges only meet at their shared vertex unless they fold back onto each other.
        if (std::abs(den) < kGeneric * la * lb && (da.u * db.u + da.v * db.v) < 0.0) {
          fail(why, "edges " + std::to_string(i) + " and " + std::to_string(j) + " fold onto each other");
          return std::nullopt;
        }
        continue;
      }
      const P2 w = sub(a0(j), a0(i));
      if (std::abs(den) < kGeneric * la * lb) {
        // Parallel in projection: degenerate only if they overlap.
        if (std::abs(cross2(da, w)) < kGeneric * la * std::max(la, lb)) {
          const double t0 = (w.u * da.u + w.v * da.v) / (la * la);
          const double t1 = t0 + (db.u * da.u + db.v * da.v) / (la * la);
          if (std::max(t0, t1) >= -kGeneric && std::min(t0, t1) <= 1.0 + kGeneric) {
            fail(why, "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap in projection");
            return std::nullopt;
          }
        }
        continue;
      }
      const double s = cross2(w, db) / den;
      const double t = cross2(w, da) / den;
      if (s < -kGeneric || s > 1.0 + kGeneric || t < -kGeneric || t > 1.0 + kGeneric) continue;
      if (s < kGeneric || s > 1.0 - kGeneric || t < kGeneric || t > 1.0 - kGeneric) {
        fail(why, "edges " + std::to_string(i) + " and " + std::to_string(j) + " meet near a vertex");
        return std::nullopt;
      }
      const double hi = h[i] * (1.0 - s) + h[(i + 1) % n] * s;
      const double hj = h[j] * (1.0 - t) + h[(j + 1) % n] * t;
      const double l3 = std::max(norm(chain.edge_end(i) - chain.edge_start(i)),
                                 norm(chain.edge_end(j) - chain.edge_start(j)));
      if (std::abs(hi - hj) < 1e-12 * l3) {
        fail(why, "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect in space");
        return std::nullopt;
      }
      Crossing c;
      const bool i_over = hi > hj;
      c.over_edge = i_over ? i : j;
      c.under_edge = i_over ? j : i;
      c.over_pos = i_over ? i + s : j + t;
      c.under_pos = i_over ? j + t : i + s;
      const P2 od = i_over ? da : db;
      const P2 ud = i_over ? db : da;
      c.sign = cross2(od, ud) > 0.0 ? 1 : -1;
      d.crossings.push_back(c);
    }
  }

  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    d.traversal.push_back({k, true, d.crossings[k].over_pos});
    d.traversal.push_back({k, false, d.crossings[k].under_pos});
  }
  std::sort(d.traversal.begin(), d.traversal.end(),
            [](const Passage& a, const Passage& b) { return a.pos < b.pos; });
  for (std::size_t k = 1; k < d.traversal.size(); ++k) {
    const double a = d.traversal[k - 1].pos, b = d.traversal[k].pos;
    if (std::floor(a) == std::floor(b) && b - a < kGeneric) {
      fail(why, "two crossings coincide on edge " + std::to_string(static_cast<std::size_t>(a)));
      return std::nullopt;
    }
  }
  return d;
}

int diagram_writhe(const Diagram& d) {
  int w = 0;
  for (const Crossing& c : d.crossings) w += c.sign;
  return w;
}

namespace {

struct ArcEnds {
  int over_in = 0, over_out = 0, under_in = 0, under_out = 0;
};

int find(std::vector<std::uint8_t>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

LaurentPoly bracket(const Diagram& d) {
  const std::size_t c = d.crossings.size();
  if (c > kMaxStateSumCrossings)
    throw CapacityError("diagram has " + std::to_string(c) + " crossings; the state sum is limited to " +
                        std::to_string(kMaxStateSumCrossings));
  if (d.traversal.size() != 2 * c) throw InvalidArgument("traversal must list every crossing twice");

  const int passages = static_cast<int>(2 * c);
  const int arcs = d.closed ? std::max(passages, 1) : passages + 1;
  // Arc p ends at passage p; arc p+1 (cyclically when closed) leaves it.
  std::vector<ArcEnds> ends(c);
  for (int p = 0; p < passages; ++p) {
    const Passage& ps = d.traversal[p];
    const int in = p;
    const int out = d.closed ? (p + 1) % passages : p + 1;
    if (ps.over) {
      ends[ps.crossing].over_in = in;
      ends[ps.crossing].over_out = out;
    } else {
      ends[ps.crossing].under_in = in;
      ends[ps.crossing].under_out = out;
    }
  }

  // counts[sigma + c][loops]
  std::vector<std::vector<std::uint64_t>> counts(2 * c + 1, std::vector<std::uint64_t>(arcs + 1, 0));
  std::vector<std::uint8_t> parent(arcs);
  const std::uint64_t states = std::uint64_t{1} << c;
  for (std::uint64_t s = 0; s < states; ++s) {
    std::iota(parent.begin(), parent.end(), 0);
    int sigma = 0;
    int loops = arcs;
    auto unite = [&](int a, int b) {
      a = find(parent, a);
      b = find(parent, b);
      if (a != b) {
        parent[a] = static_cast<std::uint8_t>(b);
        --loops;
      }
    };
    for (std::size_t k = 0; k < c; ++k) {
      const bool a_label = ((s >> k) & 1) == 0;
      sigma += a_label ? 1 : -1;
      const ArcEnds& e = ends[k];
      if ((d.crossings[k].sign > 0) == a_label) {
        unite(e.over_in, e.under_out);
        unite(e.over_out, e.under_in);
      } else {
        unite(e.over_in, e.under_in);
        unite(e.over_out, e.under_out);
      }
    }
    ++counts[sigma + static_cast<int>(c)][loops];
  }

  std::vector<LaurentPoly> dpow{LaurentPoly::constant(1.0)};
  const LaurentPoly dl = loop_value();
  LaurentPoly out;
  for (std::size_t si = 0; si < counts.size(); ++si) {
    for (int l = 1; l <= arcs; ++l) {
      if (counts[si][l] == 0) continue;
      while (static_cast<int>(dpow.size()) < l) dpow.push_back(dpow.back() * dl);
      const int sigma = static_cast<int>(si) - static_cast<int>(c);
      out += LaurentPoly::mono(static_cast<double>(counts[si][l]), 4 * sigma) * dpow[l - 1];
    }
  }
  return out;
}

LaurentPoly normalized_bracket(const Diagram& d) { return kink_factor(-diagram_writhe(d)) * bracket(d); }

Diagram mirror(const Diagram& d) {
  Diagram r = d;
  for (Crossing& c : r.crossings) {
    std::swap(c.over_edge, c.under_edge);
    std::swap(c.over_pos, c.under_pos);
    c.sign = -c.sign;
  }
  for (Passage& p : r.traversal) p.over = !p.over;
  return r;
}

std::string gauss_code(const Diagram& d) {
  std::map<std::size_t, int> id;
  std::ostringstream out;
  for (std::size_t k = 0; k < d.traversal.size(); ++k) {
    const Passage& p = d.traversal[k];
    auto it = id.find(p.crossing);
    if (it == id.end()) it = id.emplace(p.crossing, static_cast<int>(id.size()) + 1).first;
    if (k) out << ' ';
    out << (p.over ? 'O' : 'U') << it->second << (d.crossings[p.crossing].sign > 0 ? '+' : '-');
  }
  return out.str();
}

Diagram diagram_from_gauss_code(const std::string& code, bool closed) {
  std::istringstream in(code);
  std::string tok;
  std::map<int, std::size_t> index;
  Diagram d;
  d.closed = closed;
  std::vector<int> seen_over, seen_under;
  while (in >> tok) {
    if (tok.size() < 3 || (tok[0] != 'O' && tok[0] != 'U') || (tok.back() != '+' && tok.back() != '-'))
      throw InvalidArgument("bad Gauss-code token '" + tok + "'");
    const int label = std::stoi(tok.substr(1, tok.size() - 2));
    const int sign = tok.back() == '+' ? 1 : -1;
    const bool over = tok[0] == 'O';
    auto it = index.find(label);
    if (it == index.end()) {
      it = index.emplace(label, d.crossings.size()).first;
      Crossing c;
      c.sign = sign;
      d.crossings.push_back(c);
      seen_over.push_back(0);
      seen_under.push_back(0);
    }
    const std::size_t k = it->second;
    if (d.crossings[k].sign != sign) throw InvalidArgument("crossing " + std::to_string(label) + " has two signs");
    const double pos = static_cast<double>(d.traversal.size());
    if (over) {
      d.crossings[k].over_pos = pos;
      ++seen_over[k];
    } else {
      d.crossings[k].under_pos = pos;
      ++seen_under[k];
    }
    d.traversal.push_back({k, over, pos});
  }
  for (std::size_t k = 0; k < d.crossings.size(); ++k)
    if (seen_over[k] != 1 || seen_under[k] != 1)
      throw InvalidArgument("every crossing needs exactly one O and one U passage");
  return d;
}

LaurentPoly k21_bracket(int writhe_sign) {
  const int s = writhe_sign > 0 ? 1 : -1;
  return LaurentPoly::mono(1.0, 8 * s) + LaurentPoly::mono(-1.0, -16 * s) + LaurentPoly::constant(1.0);
}

const char* pattern_name(Pattern4 p) {
  switch (p) {
    case Pattern4::none: return "none";
    case Pattern4::a1: return "A1";
    case Pattern4::a2: return "A2";
    case Pattern4::a3: return "A3";
    case Pattern4::bi: return "Bi";
    case Pattern4::bii: return "Bii";
    case Pattern4::c: return "C";
  }
  return "?";
}

Classification4 classify_4edge(const Diagram& d) {
  if (d.closed || d.edge_count != 4) throw InvalidArgument("classify_4edge needs a diagram of a 4-edge open chain");
  bool x13 = false, x14 = false, x24 = false;
  for (const Crossing& c : d.crossings) {
    const std::size_t a = std::min(c.over_edge, c.under_edge);
    const std::size_t b = std::max(c.over_edge, c.under_edge);
    if (a == 0 && b == 2 && !x13) x13 = true;
    else if (a == 0 && b == 3 && !x14) x14 = true;
    else if (a == 1 && b == 3 && !x24) x24 = true;
    else throw InternalError("unexpected crossing between edges " + std::to_string(a) + " and " + std::to_string(b));
  }
  Classification4 out;
  out.writhe = diagram_writhe(d);
  if (x13 && x24 && !x14) throw InternalError("crossing pattern e1-e3 with e2-e4 is not realizable");
  if (x13 && x14 && x24) out.pattern = Pattern4::c;
  else if (x13 && x14) out.pattern = Pattern4::bi;
  else if (x14 && x24) out.pattern = Pattern4::bii;
  else if (x13) out.pattern = Pattern4::a1;
  else if (x24) out.pattern = Pattern4::a2;
  else if (x14) out.pattern = Pattern4::a3;

  const LaurentPoly f = normalized_bracket(d);
  if (f.approx_equal(LaurentPoly::constant(1.0), 1e-9)) return out;
  const bool b_case = out.pattern == Pattern4::bi || out.pattern == Pattern4::bii;
  if (!b_case || d.crossings[0].sign != d.crossings[1].sign)
    throw InternalError(std::string("nontrivial knotoid from crossing pattern ") + pattern_name(out.pattern));
  if (!f.approx_equal(kink_factor(-out.writhe) * k21_bracket(out.writhe), 1e-9))
    throw InternalError("nontrivial 4-edge diagram is not k2.1");
  out.type = Knotoid4::k21;
  return out;
}

}  // namespace entangle
