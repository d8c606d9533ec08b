#include <doctest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "pcp/collector.hpp"
#include "pcp/error.hpp"
#include "pcp/oracle.hpp"

using namespace pcp;
using namespace pcp::testing;

namespace {

ErrorKind table_error(const GroupPresentation& p, const OracleOptions& opt = {}) {
  try {
    build_table(p, opt);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::SyntaxError;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("Klein four-group table") {
    auto t = build_table(group_fixture("c2xc2"));
    REQUIRE(t.order() == 4);
    for (std::size_t u = 0; u < 4; ++u) {
      CHECK(t.at(u, u) == 0);
      CHECK(t.at(0, u) == u);
      for (std::size_t v = 0; v < 4; ++v) CHECK(t.at(u, v) == (u ^ v));
    }
  }

  TEST_CASE("S3 and D4") {
    auto s3 = verify_group_axioms(group_fixture("s3"));
    CHECK(s3.verdict);
    CHECK(s3.order == 6);
    CHECK_FALSE(s3.witness);
    auto d4 = verify_group_axioms(group_fixture("d4"));
    CHECK(d4.verdict);
    CHECK(d4.order == 8);
    // S3 is not abelian.
    auto t = build_table(group_fixture("s3"));
    bool commutative = true;
    for (std::size_t u = 0; u < t.order(); ++u)
      for (std::size_t v = 0; v < t.order(); ++v) commutative = commutative && t.at(u, v) == t.at(v, u);
    CHECK_FALSE(commutative);
  }

  TEST_CASE("inconsistent S3 variant has a witness") {
    auto p = group_from("group 2\ng1^2 = g2\ng2^3 = 1\ng2*g1 = g1*g2^2\n");
    auto r = verify_group_axioms(p);
    CHECK_FALSE(r.verdict);
    REQUIRE(r.witness);
  }

  TEST_CASE("trivial group") {
    auto r = verify_group_axioms(group_from("group 1\norder g1 = 1\n"));
    CHECK(r.verdict);
    CHECK(r.order == 1);
  }

  TEST_CASE("preconditions") {
    CHECK(table_error(group_fixture("ex14")) == ErrorKind::InfiniteOrder);
    OracleOptions small;
    small.cap = 7;
    CHECK(table_error(group_fixture("d4"), small) == ErrorKind::CapExceeded);
  }

  TEST_CASE("element_index enumerates lexicographically") {
    auto p = group_fixture("d4");
    auto t = build_table(p);
    for (std::size_t u = 0; u < t.order(); ++u) CHECK(element_index(p, t.elements[u]) == u);
    CHECK(to_string(t.elements[1]) == "g2");
    CHECK(to_string(t.elements[4]) == "g1");
  }

  TEST_CASE("serial and parallel kernels agree") {
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
      auto p = prepare(random_finite_group(rng, t % 3 ? GroupShape::Dense : GroupShape::Nilpotent));
      OracleOptions opt;
      opt.budget = 200000;
      MultiplicationTable a;
      try {
        a = build_table_serial(p, opt);
      } catch (const BudgetExceeded&) {
        continue;
      }
      auto b = build_table_parallel(p, opt);
      CHECK(a.table == b.table);
      CHECK(find_associativity_violation_serial(a) == find_associativity_violation_parallel(a));
    }
  }

  TEST_CASE("algebra oracle") {
    auto r24 = verify_algebra_axioms(algebra_fixture("ex24"));
    CHECK_FALSE(r24.verdict);
    REQUIRE(r24.witness);
    CHECK(r24.witness->kind == "associativity");
    CHECK(r24.witness->elements == std::vector<std::string>{"a1", "a1", "a1"});

    auto zero = verify_algebra_axioms(algebra_from("algebra 3 over GF(2)\n"));
    CHECK(zero.verdict);
    CHECK(zero.order == 8);

    auto ut4 = verify_algebra_axioms(algebra_fixture("ut4_gf2"));
    CHECK(ut4.verdict);
    CHECK(ut4.order == 64);

    CHECK_THROWS_AS(verify_algebra_axioms(algebra_fixture("ut4_gf2"), 5), Error);
  }
}
