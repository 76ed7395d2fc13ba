#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "chain3d.hpp"
#include "diagram.hpp"
#include "laurent.hpp"

namespace entangle {

// Uniform on S^2, a pure function of (seed, index, retry).
Point3 sample_direction(std::uint64_t seed, std::uint64_t index, std::uint32_t retry = 0);

struct BracketEstimate {
  LaurentPoly mean;
  std::map<int, double> stderr_by_exp;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  std::uint64_t seed = 0;
  char variable = 'A';
};

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

BracketEstimate mc_bracket(const PolyChain& chain, const McOptions& opt);
// Mean normalized bracket, in A; see to_variable_t.
BracketEstimate mc_jones(const PolyChain& chain, const McOptions& opt);
BracketEstimate to_variable_t(const BracketEstimate& e);

nlohmann::json to_json(const BracketEstimate& e);

struct DistributionEntry {
  double probability = 0.0;
  double stderr_ = 0.0;
};

struct DistributionEstimate {
  // (class name, writhe) -> estimate
  std::map<std::pair<std::string, int>, DistributionEntry> entries;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  std::uint64_t seed = 0;
};

using DiagramClassifier = std::function<std::string(const Diagram&)>;

// Default classifier handles 4-edge open chains (k0 / k2.1).
DistributionEstimate mc_distribution(const PolyChain& chain, const McOptions& opt,
                                     const DiagramClassifier& classifier = {});

nlohmann::json to_json(const DistributionEstimate& e);

}  // namespace entangle
