#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chain3d.hpp"

namespace entangle {

// Text format: "open"/"closed" header (default open), one "x y z" vertex per line,
// '#' comments, blank lines separate chains. JSON: {"closed": bool, "vertices": [...]}
// or an array of such objects.
std::vector<PolyChain> parse_chains(const std::string& content);
std::vector<PolyChain> parse_chain_file(const std::string& path);

nlohmann::json to_json(const PolyChain& c);

}  // namespace entangle
