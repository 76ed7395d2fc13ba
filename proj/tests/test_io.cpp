#include <doctest.h>

#include <string>

#include "errors.hpp"
#include "io.hpp"

using namespace entangle;

namespace {

ParseError parse_failure(const std::string& content) {
  try {
    parse_chains(content);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << content);
  return ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("text format") {
  const auto one = parse_chains("0 0 0\n1 0 0\n1 1 0\n");
  REQUIRE(one.size() == 1);
  CHECK_FALSE(one[0].closed);
  CHECK(one[0].vertices.size() == 3);

  const auto many = parse_chains(
      "# comment\nclosed\n0 0 0\n1 0 0  # trailing\n# inside\n1 1 0\n\n\nopen\n+1e-1 -2 3.5\n0 0 0\n");
  REQUIRE(many.size() == 2);
  CHECK(many[0].closed);
  CHECK(many[0].vertices.size() == 3);
  CHECK(many[0].vertices[1].x == 1.0);
  CHECK_FALSE(many[1].closed);
  CHECK(many[1].vertices[0].x == 0.1);
  CHECK(many[1].vertices[0].z == 3.5);
  CHECK(parse_chains("0 0 0\r\n1 0 0\r\n").size() == 1);
}

TEST_CASE("text errors carry line and column") {
  ParseError e = parse_failure("open\n0 0 0\n1 0 x\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 5);
  CHECK(std::string(e.what()).find("line 3, column 5") != std::string::npos);

  e = parse_failure("0 0 0\n1 0\n");
  CHECK(e.line() == 2);
  e = parse_failure("0 0 0\n1 0 0 7\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 7);
  e = parse_failure("0 0 0\nclosed\n1 0 0\n");
  CHECK(e.line() == 2);
  e = parse_failure("0 0 0\n1 0 inf\n");
  CHECK(e.column() == 5);
  e = parse_failure("closed\n0 0 0\n1 0 0\n0 0 0\n");
  CHECK(std::string(e.what()).find("coincide") != std::string::npos);
  e = parse_failure("# nothing\n");
  CHECK(std::string(e.what()).find("no chain") != std::string::npos);
  parse_failure("0 0 0\n");
}

TEST_CASE("json format") {
  const auto one = parse_chains(R"({"closed": true, "vertices": [[0,0,0],[1,0,0],[1,1,0]]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].closed);
  const auto two = parse_chains(R"([{"vertices": [[0,0,0],[1,0,0]]}, {"closed": false, "vertices": [[0,0,1],[1,0,1]]}])");
  REQUIRE(two.size() == 2);
  CHECK_FALSE(two[0].closed);
  CHECK(two[1].vertices[1].z == 1.0);

  const auto back = parse_chains(to_json(one[0]).dump());
  CHECK(back[0].closed == one[0].closed);
  CHECK(back[0].vertices.size() == 3);
  CHECK(back[0].vertices[2].y == 1.0);

  ParseError e = parse_failure("{\"vertices\": [[0,0,0],\n [1,0,]]}");
  CHECK(e.line() == 2);
  parse_failure(R"({"vertices": [[0,0,0],[1,0]]})");
  parse_failure(R"({"closed": 1, "vertices": [[0,0,0],[1,0,0]]})");
  parse_failure(R"({"points": []})");
}

TEST_CASE("files") {
  const std::string dir = ENTANGLE_DATA_DIR;
  CHECK(parse_chain_file(dir + "/hopf.txt").size() == 2);
  CHECK(parse_chain_file(dir + "/example_frames.txt").size() == 3);
  CHECK(parse_chain_file(dir + "/trefoil.txt")[0].closed);
  CHECK_THROWS_AS(parse_chain_file(dir + "/bad_vertex.txt"), ParseError);
  CHECK_THROWS_AS(parse_chain_file(dir + "/does_not_exist.txt"), InvalidArgument);
}
