#include <doctest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "pcp/algebra.hpp"
#include "pcp/error.hpp"
#include "pcp/text_format.hpp"

using namespace pcp;
using namespace pcp::testing;

namespace {

std::string N(const AlgebraPresentation& p, const std::string& expr) {
  return to_string(normalize(p, parse_algebra_expression(expr, p)));
}

std::vector<std::string> ids_of(const std::vector<AlgebraTestEquationId>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(to_string(id));
  return out;
}

std::vector<std::string> failures_of(const AlgebraConsistencyReport& r) {
  std::vector<std::string> out;
  for (const auto& f : r.failures) out.push_back(to_string(f.id));
  return out;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("validation") {
    CHECK_NOTHROW(algebra_fixture("ex24"));
    CHECK_THROWS_WITH_AS(algebra_from("algebra 2 over Z\na1*a2 = a2\n"), doctest::Contains("a2"), Error);
    try {
      algebra_from("algebra 2 over Z\na1*a2 = a2\n");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadIndex);
    }
    try {
      algebra_from("algebra 2 over GF(3)\n2*a1 = a2\n");
      FAIL("finite order over a field accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedRing);
    }
    try {
      algebra_from("algebra 2 over Z\n2*a1 = 3*a2\norder a2 = 2\n");
      FAIL("out of range coefficient accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ExponentOutOfRange);
    }
    auto zero = algebra_from("algebra 2 over Q\n");
    CHECK(multiply(zero, generator_vector(zero, 1), generator_vector(zero, 2)).is_zero());
  }

  TEST_CASE("weights") {
    auto w24 = compute_algebra_weights(algebra_fixture("ex24"));
    CHECK(w24.weights == std::vector<long>{1, 2, 3});
    CHECK(w24.d == 3);
    for (const char* name : {"ex25", "ex26"}) {
      auto w = compute_algebra_weights(algebra_fixture(name));
      CHECK(w.weights == std::vector<long>{1, 1, 2});
      CHECK(w.d == 2);
    }
    auto z = compute_algebra_weights(algebra_from("algebra 3 over Z\n"));
    CHECK(z.weights == std::vector<long>{1, 1, 1});
    CHECK(z.d == 1);
  }

  TEST_CASE("normal forms") {
    auto p24 = algebra_fixture("ex24");
    CHECK(N(p24, "a1*(a1*a1)") == "a3");
    CHECK(N(p24, "(a1*a1)*a1") == "0");
    CHECK(N(p24, "a1*a1*a1") == "0");
    CHECK(to_string(normalize(p24, FreeElement(p24.ring()))) == "0");

    auto p25 = algebra_fixture("ex25");
    CHECK(N(p25, "2*(a1*a2)") == "2*a3");
    CHECK(N(p25, "(2*a1)*a2") == "0");
    CHECK(N(p25, "a1 + a1") == "0");
    CHECK(N(p25, "-a1") == "a1");

    auto p26 = algebra_fixture("ex26");
    CHECK(to_string(multiply(p26, generator_vector(p26, 2), generator_vector(p26, 1))) == "a3");
    CHECK(multiply(p26, NormalVector(p26.ring(), 3), generator_vector(p26, 1)).is_zero());
  }

  TEST_CASE("reduction with power rows pushes into higher generators") {
    auto p = algebra_from("algebra 3 over Z\n2*a1 = a2\n3*a2 = a3\n");
    CHECK(N(p, "5*a1") == "a1 + 2*a2");
    CHECK(N(p, "4*a1") == "2*a2");
    CHECK(N(p, "4*a1 + a2") == "a3");
    CHECK(N(p, "-a1") == "a1 + 2*a2 + -1*a3");
  }

  TEST_CASE("test equation enumeration") {
    CHECK(ids_of(enumerate_algebra_test_equations(algebra_fixture("ex24"), nullptr)).size() == 27);
    auto p24 = algebra_fixture("ex24");
    auto w24 = compute_algebra_weights(p24);
    CHECK(ids_of(enumerate_algebra_test_equations(p24, &w24)) == std::vector<std::string>{"A1(i=1,j=1,k=1)"});

    auto p25 = algebra_fixture("ex25");
    auto w25 = compute_algebra_weights(p25);
    CHECK(ids_of(enumerate_algebra_test_equations(p25, &w25)) ==
          std::vector<std::string>{"A2(i=1,j=1)", "A2(i=2,j=1)", "A3(i=1,j=1)", "A3(i=1,j=2)"});

    auto zero = algebra_from("algebra 1 over Z\n");
    auto wz = compute_algebra_weights(zero);
    CHECK(enumerate_algebra_test_equations(zero, &wz).empty());
  }

  TEST_CASE("worked examples") {
    auto r24 = check_algebra_consistency(algebra_fixture("ex24"));
    REQUIRE(failures_of(r24) == std::vector<std::string>{"A1(i=1,j=1,k=1)"});
    CHECK(r24.failures[0].lhs_expr == "a1*(a1*a1)");
    CHECK(r24.failures[0].rhs_expr == "(a1*a1)*a1");
    CHECK(to_string(r24.failures[0].lhs_nf) == "a3");
    CHECK(to_string(r24.failures[0].rhs_nf) == "0");

    auto r25 = check_algebra_consistency(algebra_fixture("ex25"));
    REQUIRE(failures_of(r25) == std::vector<std::string>{"A2(i=2,j=1)"});
    CHECK(to_string(r25.failures[0].lhs_nf) == "2*a3");
    CHECK(to_string(r25.failures[0].rhs_nf) == "0");

    auto r26 = check_algebra_consistency(algebra_fixture("ex26"));
    REQUIRE(failures_of(r26) == std::vector<std::string>{"A3(i=1,j=2)"});
    CHECK(to_string(r26.failures[0].lhs_nf) == "2*a3");
    CHECK(to_string(r26.failures[0].rhs_nf) == "0");

    CHECK(check_algebra_consistency(algebra_fixture("ut4_gf2")).verdict);
  }

  TEST_CASE("unfiltered mode agrees on the fixtures") {
    AlgebraCheckOptions full;
    full.mode = CheckMode::Full;
    for (const char* name : {"ex24", "ex25", "ex26", "ut4_gf2"}) {
      CAPTURE(name);
      auto p = algebra_fixture(name);
      CHECK(check_algebra_consistency(p, full).verdict == check_algebra_consistency(p).verdict);
    }
  }

  TEST_CASE("normalize is idempotent and linear over prime fields") {
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
      const unsigned long prime = t % 2 ? 2 : 3;
      auto p = validate_algebra(random_algebra(rng, prime, 5, 0.4));
      const auto ring = p.ring();
      auto u = random_free_element(rng, ring, p.size());
      auto v = random_free_element(rng, ring, p.size());
      auto lambda = random_scalar(rng, ring), mu = random_scalar(rng, ring);
      auto nu = normalize(p, u);
      CHECK(normalize(p, nu.to_free(ring)) == nu);
      CHECK(normalize(p, lambda * u + mu * v) ==
            add(p, scalar_mul(p, lambda, nu), scalar_mul(p, mu, normalize(p, v))));
    }
  }

  TEST_CASE("matrix unit algebras are consistent and associative") {
    Rng rng(123);
    for (int t = 0; t < 60; ++t) {
      auto raw = matrix_unit_algebra(rng, t % 2 ? 2 : 3, 4);
      auto p = validate_algebra(raw);
      CHECK(check_algebra_consistency(p).verdict);
      const int n = p.size();
      for (Gen x = 1; x <= n; ++x)
        for (Gen y = 1; y <= n; ++y)
          for (Gen z = 1; z <= n; ++z) {
            auto a = generator_vector(p, x), b = generator_vector(p, y), c = generator_vector(p, z);
            CHECK(multiply(p, multiply(p, a, b), c) == multiply(p, a, multiply(p, b, c)));
          }
    }
  }

  TEST_CASE("parallel and serial evaluation agree") {
    Rng rng(4);
    for (int t = 0; t < 40; ++t) {
      auto p = validate_algebra(random_algebra(rng, 2, 5, 0.5));
      auto ids = enumerate_algebra_test_equations(p, nullptr);
      auto s = evaluate_algebra_equations_serial(p, ids);
      auto q = evaluate_algebra_equations_parallel(p, ids);
      REQUIRE(s.size() == q.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].id == q[i].id);
        CHECK(s[i].pass == q[i].pass);
        CHECK(s[i].lhs_nf == q[i].lhs_nf);
      }
    }
  }
}
