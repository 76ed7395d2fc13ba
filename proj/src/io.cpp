#include "io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace entangle {

namespace {

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> split(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double parse_double(const Token& t, int line) {
  double v = 0.0;
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  if (*b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || !std::isfinite(v))
    throw ParseError("malformed number '" + t.text + "'", line, t.column);
  return v;
}

void finish(std::vector<PolyChain>& out, PolyChain& cur, bool& have, int first_line) {
  if (!have) return;
  try {
    validate_chain(cur);
  } catch (const Error& e) {
    throw ParseError(std::string("chain ") + std::to_string(out.size()) + ": " + e.what(), first_line, 1);
  }
  out.push_back(cur);
  cur = PolyChain{};
  have = false;
}

std::vector<PolyChain> parse_text(const std::string& content) {
  std::vector<PolyChain> out;
  std::istringstream in(content);
  std::string line;
  PolyChain cur;
  bool have = false;
  int line_no = 0;
  int first_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto toks = split(line);
    if (toks.empty()) {
      // A comment-only line does not end a chain; a blank one does.
      if (hash == std::string::npos) finish(out, cur, have, first_line);
      continue;
    }
    if (toks.size() == 1 && (toks[0].text == "open" || toks[0].text == "closed")) {
      if (have && !cur.vertices.empty())
        throw ParseError("header must precede the vertices of a chain", line_no, toks[0].column);
      if (!have) first_line = line_no;
      cur.closed = toks[0].text == "closed";
      have = true;
      continue;
    }
    if (toks.size() != 3) {
      const int col = toks.size() > 3 ? toks[3].column : static_cast<int>(line.size()) + 1;
      throw ParseError("expected three coordinates", line_no, col);
    }
    Point3 p{parse_double(toks[0], line_no), parse_double(toks[1], line_no), parse_double(toks[2], line_no)};
    if (!have) first_line = line_no;
    have = true;
    cur.vertices.push_back(p);
  }
  finish(out, cur, have, first_line);
  return out;
}

std::pair<int, int> line_col(const std::string& s, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < s.size(); ++i) {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

PolyChain chain_from_json(const nlohmann::json& j, std::size_t index) {
  const std::string where = "chain " + std::to_string(index) + ": ";
  if (!j.is_object() || !j.contains("vertices")) throw ParseError(where + "expected an object with \"vertices\"", 1, 1);
  PolyChain c;
  if (j.contains("closed")) {
    if (!j["closed"].is_boolean()) throw ParseError(where + "\"closed\" must be a boolean", 1, 1);
    c.closed = j["closed"].get<bool>();
  }
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
      throw ParseError(where + "vertex " + std::to_string(c.vertices.size()) + " must be [x, y, z]", 1, 1);
    c.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
  }
  try {
    validate_chain(c);
  } catch (const Error& e) {
    throw ParseError(where + e.what(), 1, 1);
  }
  return c;
}

std::vector<PolyChain> parse_json(const std::string& content) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [l, c] = line_col(content, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", l, c);
  }
  std::vector<PolyChain> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(chain_from_json(item, out.size()));
  } else {
    out.push_back(chain_from_json(j, 0));
  }
  return out;
}

}  // namespace

std::vector<PolyChain> parse_chains(const std::string& content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  std::vector<PolyChain> out;
  if (first != std::string::npos && (content[first] == '{' || content[first] == '['))
    out = parse_json(content);
  else
    out = parse_text(content);
  if (out.empty()) throw ParseError("no chain found", 1, 1);
  return out;
}

std::vector<PolyChain> parse_chain_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_chains(ss.str());
}

nlohmann::json to_json(const PolyChain& c) {
  nlohmann::json v = nlohmann::json::array();
  for (const Point3& p : c.vertices) v.push_back({p.x, p.y, p.z});
  return {{"closed", c.closed}, {"vertices", v}};
}

}  // namespace entangle
