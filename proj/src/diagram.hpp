#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chain3d.hpp"
#include "laurent.hpp"

namespace entangle {

struct Crossing {
  std::size_t over_edge = 0;
  std::size_t under_edge = 0;
  int sign = 1;
  // Curve parameters (edge index + local fraction) of the two passages.
  double over_pos = 0.0;
  double under_pos = 0.0;
};

struct Passage {
  std::size_t crossing = 0;
  bool over = false;
  double pos = 0.0;
};

struct Diagram {
  std::vector<Crossing> crossings;
  std::vector<Passage> traversal;
  bool closed = false;
  std::size_t edge_count = 0;
};

constexpr std::size_t kMaxStateSumCrossings = 28;

// Orthogonal projection along xi (viewer at +xi). nullopt when the projection is
// not generic; the reason is written to `why` if given.
std::optional<Diagram> project(const PolyChain& chain, Point3 xi, std::string* why = nullptr);

LaurentPoly bracket(const Diagram& d);
int diagram_writhe(const Diagram& d);
LaurentPoly normalized_bracket(const Diagram& d);

// Over/under and all signs swapped.
Diagram mirror(const Diagram& d);

// Text form: one token per passage, e.g. "O1+ U2+ U1+ O2+".
std::string gauss_code(const Diagram& d);
Diagram diagram_from_gauss_code(const std::string& code, bool closed);

enum class Pattern4 { none, a1, a2, a3, bi, bii, c };
enum class Knotoid4 { k0, k21 };

struct Classification4 {
  Knotoid4 type = Knotoid4::k0;
  Pattern4 pattern = Pattern4::none;
  int writhe = 0;
};

Classification4 classify_4edge(const Diagram& d);

const char* pattern_name(Pattern4 p);

// A^2 - A^-4 + 1 for writhe +2, its mirror for writhe -2.
LaurentPoly k21_bracket(int writhe_sign);

}  // namespace entangle
