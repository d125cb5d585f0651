#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

namespace {

dc::ErrorKind kind_of(const std::string& text) {
  try {
    (void)dc::parse_model(text);
  } catch (const dc::Error& e) {
    return e.kind();
  }
  FAIL("parsed without error: " << text);
  return dc::ErrorKind::Config;
}

}  // namespace

TEST_CASE("shipped tables load with the expected sizes") {
  const dc::Model& m = testing::model();
  CHECK(m.paramsets.size() == 244);
  CHECK(m.fixrows.size() == 81);
  CHECK(m.pairs.size() == 7);
  CHECK(m.ledgers.size() == 14);
  size_t entries = 0;
  for (const auto& l : m.ledgers) entries += l.entries.size();
  CHECK(entries == 187);
  CHECK(m.weylclasses.size() == 11);
  CHECK(m.classtypes.size() == 18);
  CHECK(m.classfams.size() == 51);
  REQUIRE(m.weyl.size() == 1);
  CHECK(m.weyl.front().gens.size() == 4);
  CHECK(m.weyl.front().positive.size() == 24);
}

TEST_CASE("serialize then parse gives the same text") {
  const std::string once = dc::serialize(testing::model());
  const std::string twice = dc::serialize(dc::parse_model(once));
  CHECK(once == twice);
}

TEST_CASE("a minimal set parses") {
  const dc::Model m = dc::parse_model("paramset X { moduli: [q^2-1] exclude: k = 0 equiv: [k->-k] card: (q^2-2)/2 }");
  REQUIRE(m.paramsets.size() == 1);
  CHECK(m.paramsets[0].vars == std::vector<std::string>{"k"});
}

TEST_CASE("malformed input reports the right error kind") {
  CHECK(kind_of("paramset X { moduli: [q^2-1 card: 1 }") == dc::ErrorKind::SyntaxError);
  CHECK(kind_of("paramset X { moduli: [q^2-1] card: (q^2-2)/2 + z }") == dc::ErrorKind::UnknownSymbol);
  CHECK(kind_of("fixrow R { members: [NOPE] fix: 1 }") == dc::ErrorKind::DanglingReference);
  CHECK(kind_of("widget W { }") == dc::ErrorKind::SyntaxError);
}

TEST_CASE("syntax errors carry a line number") {
  try {
    (void)dc::parse_model("\n\nparamset X { moduli: [q^2-1 card: 1 }");
    FAIL("expected an error");
  } catch (const dc::Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("expressions print back to equivalent expressions") {
  for (const char* s : {"(q^2-s2*q+1)*(q^2-1)", "2^(2*t)-1", "q/s2*p1^2*p8a", "-(th-1)*i*k"}) {
    const dc::ExprPtr e = dc::parse_expr(s, {"t", "i", "k"});
    const dc::ExprPtr back = dc::parse_expr(dc::to_string(e), {"t", "i", "k"});
    CHECK(dc::to_string(e) == dc::to_string(back));
  }
}

TEST_CASE("every data file exists") {
  for (const auto& f : dc::data_file_names()) CHECK_NOTHROW((void)dc::read_file(testing::data_dir() + "/" + f));
  CHECK_THROWS_AS((void)dc::load_model("/nonexistent"), dc::Error);
}
