#include <doctest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "pcp/error.hpp"
#include "pcp/text_format.hpp"

using namespace pcp;
using namespace pcp::testing;

namespace {

struct Failure {
  ErrorKind kind;
  int line = 0;
  int column = 0;
};

Failure parse_failure(const std::string& text) {
  try {
    parse_document(text);
  } catch (const SyntaxError& e) {
    return {e.kind(), e.line(), e.column()};
  } catch (const Error& e) {
    return {e.kind()};
  }
  FAIL("parsed: " << text);
  return {ErrorKind::SyntaxError};
}

}  // namespace

TEST_SUITE("text_format") {
  TEST_CASE("group document") {
    auto doc = parse_document(read_fixture("ex13"));
    CHECK(doc.kind == DocumentKind::Group);
    CHECK(doc.n == 3);
    CHECK(doc.declarations.size() == 6);
    const auto& first = std::get<ConjDecl>(doc.declarations[0].body);
    CHECK(first.upper == 3);
    CHECK(first.lower == 1);
    CHECK_FALSE(first.inverse);
    CHECK(first.tail == FactorList{{2, 1}});
    CHECK(doc.declarations[0].span.line == 3);
    CHECK(std::get<ConjDecl>(doc.declarations[3].body).inverse);
  }

  TEST_CASE("header only") {
    auto doc = parse_document("group 1\n");
    CHECK(doc.n == 1);
    CHECK(doc.declarations.empty());
    auto p = prepare(to_group_raw(doc));
    CHECK_FALSE(p.order(1).is_finite());
  }

  TEST_CASE("algebra document") {
    auto doc = parse_document("algebra 3 over Q  # comment\na1*a1 = 1/2*a2 - a3\norder a3 = inf\n");
    CHECK(doc.kind == DocumentKind::Algebra);
    CHECK(to_string(*doc.ring) == "Q");
    const auto& prod = std::get<ProductDecl>(doc.declarations[0].body);
    CHECK(to_string(prod.rhs) == "1/2*a2 + -1*a3");
  }

  TEST_CASE("syntax errors carry positions") {
    auto bad_rhs = parse_failure("group 3\ng2*g1 = g3*g1\n");
    CHECK(bad_rhs.kind == ErrorKind::SyntaxError);
    CHECK(bad_rhs.line == 2);
    CHECK(bad_rhs.column == 9);

    CHECK(parse_failure("").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("group x\n").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("group 2\ng2*g1 = g1*\n").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("group 2\ng2*g1 = g1 g2\n").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("group 2\norder g1 = 0\n").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("algebra 2 over GF(4)\n").kind == ErrorKind::SyntaxError);
    CHECK(parse_failure("algebra 2 over Z\na1*a1 = 1/2*a2\n").kind == ErrorKind::SyntaxError);
  }

  TEST_CASE("duplicates and unknown generators") {
    CHECK(parse_failure("group 2\ng2*g1 = g1\ng2*g1 = g1*g2\n").kind == ErrorKind::DuplicateRelation);
    CHECK(parse_failure("group 2\norder g1 = 2\norder g1 = 3\n").kind == ErrorKind::DuplicateRelation);
    CHECK(parse_failure("group 2\ng3*g1 = g1\n").kind == ErrorKind::UnknownGenerator);
    CHECK(parse_failure("algebra 2 over Z\na1*a1 = a3\n").kind == ErrorKind::UnknownGenerator);
  }

  TEST_CASE("conversion errors") {
    auto conflict = parse_document("group 1\norder g1 = 3\ng1^2 = 1\n");
    CHECK_THROWS_AS(to_group_raw(conflict), Error);
    try {
      to_group_raw(parse_document("group 2\ng1*g2 = g2\n"));
      FAIL("accepted j <= i");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadIndex);
    }
  }

  TEST_CASE("words and expressions") {
    CHECK(to_string(parse_word("g3*g2^-1*g1", 3)) == "g3*g2^-1*g1");
    CHECK(parse_word("1", 3).empty());
    CHECK_THROWS_AS(parse_word("g4", 3), Error);
    CHECK_THROWS_AS(parse_word("g1**g2", 3), SyntaxError);
    auto p = algebra_fixture("ex24");
    CHECK(parse_algebra_expression("2*a1 - a1", p).terms().size() == 2);
    CHECK_THROWS_AS(parse_algebra_expression("a1 + 3", p), SyntaxError);
  }

  TEST_CASE("fixtures round-trip") {
    for (const char* name : {"ex13", "ex14", "ex15", "ex16", "ex17", "s3", "d4", "z3", "c2xc2", "heisenberg",
                             "empty_group", "ex24", "ex25", "ex26", "ut4_gf2"}) {
      CAPTURE(name);
      auto doc = parse_document(read_fixture(name));
      CHECK(parse_document(serialize(doc)) == doc);
    }
  }

  TEST_CASE("random presentations round-trip") {
    Rng rng(55);
    for (int t = 0; t < 300; ++t) {
      auto p = prepare(t % 2 ? random_mixed_group(rng) : random_finite_group(rng, GroupShape::Dense));
      auto doc = to_document(p);
      auto text = serialize(doc);
      CHECK(parse_document(text) == doc);
      CHECK(validate(to_group_raw(parse_document(text))) == validate(to_raw(p)));
    }
    for (int t = 0; t < 300; ++t) {
      auto p = validate_algebra(random_algebra(rng, t % 2 ? 2 : 3, 5, 0.4));
      auto text = serialize(to_document(p));
      CHECK(validate_algebra(to_algebra_raw(parse_document(text))) == p);
    }
  }
}
