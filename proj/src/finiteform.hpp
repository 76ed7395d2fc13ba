#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "chain3d.hpp"
#include "laurent.hpp"
#include "sphere.hpp"

namespace entangle {

LaurentPoly bracket_e3(const PolyChain& chain);
LaurentPoly bracket_p4_closed(const PolyChain& chain);
LaurentPoly jones_e3(const PolyChain& chain);

// Directions in which e_i = (pi, pi1) crosses both e_j = (pj, pj1) and e_j+1 = (pj1, pj2).
struct JointRegion {
  SphericalPolygon polygon;
  double area = 0.0;
  std::string row;
};

JointRegion q_joint(Point3 pi, Point3 pi1, Point3 pj, Point3 pj1, Point3 pj2);

enum class K21Case { none, bi, bii };

struct K21Probability {
  double probability = 0.0;
  K21Case which = K21Case::none;
  int writhe_sign = 0;  // sign of the k2.1 diagram's writhe; 0 when probability is 0
  double p_bi = 0.0;
  double p_bii = 0.0;
};

K21Probability p_k21(const PolyChain& chain);

struct E4Probabilities {
  std::map<int, double> k0;   // writhe -> probability
  std::map<int, double> k21;  // writhe -> probability
  double total() const;
  double k21_total() const;
};

struct E4Result {
  LaurentPoly bracket;
  E4Probabilities probabilities;
};

E4Result bracket_e4(const PolyChain& chain);
LaurentPoly jones_e4(const PolyChain& chain);

// Finite forms where available (open chains with <= 4 edges, closed with <= 4 edges).
std::optional<LaurentPoly> exact_bracket(const PolyChain& chain);
// Jones polynomial in t.
std::optional<LaurentPoly> exact_jones(const PolyChain& chain);

}  // namespace entangle
