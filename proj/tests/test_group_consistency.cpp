#include <doctest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "pcp/collector.hpp"
#include "pcp/group_consistency.hpp"

using namespace pcp;
using namespace pcp::testing;

namespace {

std::vector<std::string> failure_ids(const ConsistencyReport& r) {
  std::vector<std::string> out;
  for (const auto& f : r.failures) out.push_back(to_string(f.id));
  return out;
}

std::vector<std::string> id_strings(const std::vector<TestEquationId>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(to_string(id));
  return out;
}

}  // namespace

TEST_SUITE("group_consistency") {
  TEST_CASE("enumeration order and side conditions") {
    auto ex14 = group_fixture("ex14");  // r = (inf, inf, 2)
    CHECK(id_strings(enumerate_test_equations(ex14, CheckMode::Full)) ==
          std::vector<std::string>{"G1(i=1,j=2,k=3)", "G2(i=1,j=3)", "G2(i=2,j=3)", "G4(i=1,j=2)",
                                   "G4(i=1,j=3)", "G4(i=2,j=3)", "G5(i=3)"});
    auto s3 = group_fixture("s3");  // r = (2, 3)
    CHECK(id_strings(enumerate_test_equations(s3, CheckMode::Full)) ==
          std::vector<std::string>{"G2(i=1,j=2)", "G3(i=1,j=2)", "G5(i=1)", "G5(i=2)"});
    CHECK(enumerate_test_equations(group_fixture("empty_group"), CheckMode::Full).empty());
  }

  TEST_CASE("equation sides") {
    auto ex13 = group_fixture("ex13");
    auto [lhs, rhs] = equation_sides(ex13, {EquationTag::G1, 1, 2, 3});
    CHECK(to_string(lhs) == "g2*g3^-1*g1");
    CHECK(to_string(rhs) == "g3*g2*g1");
    auto ex16 = group_fixture("ex16");
    auto [l4, r4] = equation_sides(ex16, {EquationTag::G4, 1, 2});
    CHECK(to_string(l4) == "g2*g1^-1*g1");
    CHECK(to_string(r4) == "g2");
    auto ex17 = group_fixture("ex17");
    auto [l5, r5] = equation_sides(ex17, {EquationTag::G5, 1});
    CHECK(to_string(l5) == "g1^3");
    CHECK(to_string(r5) == "g1*g2");
  }

  TEST_CASE("worked examples") {
    auto r13 = check_consistency(group_fixture("ex13"));
    CHECK_FALSE(r13.verdict);
    REQUIRE(r13.failures.size() == 1);
    CHECK(to_string(r13.failures[0].lhs_nf) == "g1*g2^-1*g3^-1");
    CHECK(to_string(r13.failures[0].rhs_nf) == "g1*g2*g3");

    CHECK(failure_ids(check_consistency(group_fixture("ex14"))) == std::vector<std::string>{"G2(i=1,j=3)"});
    CHECK(failure_ids(check_consistency(group_fixture("ex15"))) == std::vector<std::string>{"G3(i=1,j=2)"});

    auto r16 = check_consistency(group_fixture("ex16"));
    REQUIRE(r16.failures.size() == 1);
    CHECK(to_string(r16.failures[0].id) == "G4(i=1,j=2)");
    CHECK(to_string(r16.failures[0].lhs_nf) == "g2^2");
    CHECK(to_string(r16.failures[0].rhs_nf) == "g2");

    CHECK(failure_ids(check_consistency(group_fixture("ex17"))) == std::vector<std::string>{"G5(i=1)"});

    for (const char* name : {"s3", "d4", "z3", "c2xc2", "heisenberg", "empty_group"}) {
      CAPTURE(name);
      CHECK(check_consistency(group_fixture(name)).verdict);
    }
  }

  TEST_CASE("heisenberg filtered mode keeps only light pairs") {
    auto p = group_fixture("heisenberg");
    CheckOptions opt;
    opt.mode = CheckMode::NilpotentFiltered;
    auto filtered = check_consistency(p, opt);
    auto full = check_consistency(p);
    CHECK(filtered.verdict);
    CHECK(full.counts.evaluated == 4);
    // w = (1,1,2), d = 2: G1(1,2,3) and the G4 pairs involving g3 exceed d.
    CHECK(filtered.counts.evaluated == 1);
    CHECK(filtered.counts.skipped_by_weight == 3);
    CHECK(id_strings(enumerate_test_equations(p, compute_weights(p))) == std::vector<std::string>{"G4(i=1,j=2)"});
  }

  TEST_CASE("fail-fast stops at the first failure") {
    CheckOptions full_opt;
    full_opt.budget = 200000;
    CheckOptions opt = full_opt;
    opt.fail_fast = true;
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
      auto p = prepare(random_finite_group(rng, GroupShape::Dense));
      ConsistencyReport full, fast;
      try {
        full = check_consistency(p, full_opt);
      } catch (const BudgetExceeded&) {
        continue;
      }
      fast = check_consistency(p, opt);
      CHECK(full.verdict == fast.verdict);
      if (!full.verdict) {
        REQUIRE(fast.failures.size() == 1);
        CHECK(fast.failures[0].id == full.failures[0].id);
      }
    }
  }

  TEST_CASE("parallel and serial evaluation agree") {
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
      auto p = prepare(t % 2 ? random_mixed_group(rng) : random_finite_group(rng, GroupShape::Dense));
      auto ids = enumerate_test_equations(p, CheckMode::Full);
      std::vector<EquationResult> serial;
      try {
        serial = evaluate_equations_serial(p, ids, 200000);
      } catch (const BudgetExceeded&) {
        CHECK_THROWS_AS(evaluate_equations_parallel(p, ids, 200000), BudgetExceeded);
        continue;
      }
      auto parallel = evaluate_equations_parallel(p, ids, 200000);
      REQUIRE(serial.size() == parallel.size());
      for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].id == parallel[i].id);
        CHECK(serial[i].lhs_nf == parallel[i].lhs_nf);
        CHECK(serial[i].rhs_nf == parallel[i].rhs_nf);
        CHECK(serial[i].pass == parallel[i].pass);
      }
    }
  }

  TEST_CASE("disabled families are not enumerated") {
    CheckOptions opt;
    opt.families = {true, true, true, false, true};
    auto r = check_consistency(group_fixture("ex16"), opt);
    CHECK(r.verdict);
    CHECK(r.counts.enumerated == 0);
  }

  TEST_CASE("filtered mode on a non-nilpotent presentation throws") {
    CheckOptions opt;
    opt.mode = CheckMode::NilpotentFiltered;
    CHECK_THROWS_AS(check_consistency(group_fixture("ex13"), opt), Error);
  }
}
