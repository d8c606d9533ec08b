#include <doctest.h>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "pcp/collector.hpp"
#include "pcp/error.hpp"
#include "pcp/presentation.hpp"

using namespace pcp;
using namespace pcp::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::SyntaxError;
}

RawGroupPresentation free_abelian(int n) {
  RawGroupPresentation raw;
  raw.n = n;
  raw.orders.assign(static_cast<std::size_t>(n), RelativeOrder::infinity());
  return raw;
}

Word tail_word(const ExponentTail* t) { return t ? t->to_word() : Word{}; }

}  // namespace

TEST_SUITE("presentation") {
  TEST_CASE("relative orders") {
    CHECK_FALSE(RelativeOrder::infinity().is_finite());
    CHECK(RelativeOrder(3).value() == 3);
    CHECK(to_string(RelativeOrder(5)) == "5");
    CHECK(to_string(RelativeOrder::infinity()) == "inf");
    CHECK(kind_of([] { RelativeOrder(0); }) == ErrorKind::ExponentOutOfRange);
  }

  TEST_CASE("validate accepts negative tail exponents on infinite generators") {
    auto p = validate(to_group_raw(parse_document(read_fixture("ex13"))));
    CHECK(to_string(p.conj_tail(1, 3).to_word()) == "g2");
    CHECK(to_string(p.conj_tail(2, 3).to_word()) == "g3^-1");
    CHECK(to_string(p.conjinv_tail(2, 3)->to_word()) == "g3^-1");
    CHECK_FALSE(p.has_derived());
  }

  TEST_CASE("validate: single generator with trivial power tail") {
    RawGroupPresentation raw;
    raw.n = 1;
    raw.orders = {RelativeOrder(2)};
    raw.power[1] = {};
    auto p = validate(raw);
    REQUIRE(p.power_tail(1) != nullptr);
    CHECK(p.power_tail(1)->is_trivial());
  }

  TEST_CASE("validate: missing power relation defaults to the trivial tail") {
    RawGroupPresentation raw;
    raw.n = 2;
    raw.orders = {RelativeOrder(3), RelativeOrder::infinity()};
    auto p = validate(raw);
    REQUIRE(p.power_tail(1) != nullptr);
    CHECK(p.power_tail(1)->is_trivial());
    CHECK(p.power_tail(2) == nullptr);
  }

  TEST_CASE("validate rejects bad data") {
    RawGroupPresentation raw;
    raw.n = 2;
    raw.orders = {RelativeOrder(2), RelativeOrder(2)};
    raw.power[1] = {{2, 3}};
    CHECK(kind_of([&] { validate(raw); }) == ErrorKind::ExponentOutOfRange);

    raw.power[1] = {{1, 1}};
    CHECK(kind_of([&] { validate(raw); }) == ErrorKind::BadIndex);

    raw.power[1] = {};
    raw.conj[{1, 2}] = {{1, 1}};
    CHECK(kind_of([&] { validate(raw); }) == ErrorKind::BadIndex);

    raw.conj.clear();
    raw.conjinv[{1, 2}] = {{2, 1}};
    CHECK(kind_of([&] { validate(raw); }) == ErrorKind::MissingRelation);

    auto inf = free_abelian(2);
    inf.power[1] = {};
    CHECK(kind_of([&] { validate(inf); }) == ErrorKind::MissingRelation);

    auto out_of_range = free_abelian(2);
    out_of_range.conj[{1, 3}] = {{3, 1}};
    CHECK(kind_of([&] { validate(out_of_range); }) == ErrorKind::BadIndex);
  }

  TEST_CASE("omitted conjugate relations commute") {
    auto p = validate(free_abelian(3));
    for (Gen i = 1; i <= 3; ++i)
      for (Gen j = i + 1; j <= 3; ++j) {
        CHECK(p.conj_tail(i, j).to_word() == Word::letter(j));
        REQUIRE(p.conjinv_tail(i, j) != nullptr);
        CHECK(p.conjinv_tail(i, j)->to_word() == Word::letter(j));
      }
  }

  TEST_CASE("derived tails: abelian case negates exponents") {
    auto p = prepare(free_abelian(2));
    CHECK(tail_word(p.c_tail(1, 2)) == Word::letter(2, -1));
    CHECK(tail_word(p.d_tail(1, 2)) == Word::letter(2, -1));
  }

  TEST_CASE("derived tails for g2*g1 = g1*g2^2") {
    auto p = group_fixture("ex16");
    REQUIRE(p.c_tail(1, 2) != nullptr);
    CHECK(to_string(p.c_tail(1, 2)->to_word()) == "g2^-2");
    // The defining identity of the c-relation: g2 * (g1 * g2^-2) collects to g1.
    Word w = Word::letter(2) * Word::letter(1) * p.c_tail(1, 2)->to_word();
    CHECK(to_string(collect(p, w).normal) == "g1");
  }

  TEST_CASE("derived tails: f of an empty power tail is empty") {
    auto p = group_fixture("ex15");
    REQUIRE(p.f_tail(1) != nullptr);
    CHECK(p.f_tail(1)->is_trivial());
    CHECK(p.c_tail(1, 2) != nullptr);
    CHECK(p.d_tail(1, 2) == nullptr);
  }

  TEST_CASE("derived tables exist exactly under the order conditions") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      auto p = prepare(random_mixed_group(rng));
      for (Gen i = 1; i <= p.size(); ++i) {
        CHECK((p.f_tail(i) != nullptr) == p.order(i).is_finite());
        for (Gen j = i + 1; j <= p.size(); ++j) {
          CHECK((p.c_tail(i, j) != nullptr) == !p.order(j).is_finite());
          CHECK((p.d_tail(i, j) != nullptr) == (!p.order(i).is_finite() && !p.order(j).is_finite()));
        }
      }
    }
  }

  TEST_CASE("derived c-tails satisfy their defining relation on consistent input") {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
      auto p = prepare(random_finite_group(rng, GroupShape::Abelian));
      for (Gen i = 1; i <= p.size(); ++i) {
        REQUIRE(p.f_tail(i) != nullptr);
        // g_i * g_i^{r_i - 1} * f-tail is the identity.
        Word w = Word::letter(i, p.order(i).value()) * p.f_tail(i)->to_word();
        CHECK(collect(p, w).normal.is_identity());
      }
    }
  }

  TEST_CASE("nilpotent form") {
    CHECK(is_nilpotent_form(validate(free_abelian(3))));
    CHECK_FALSE(is_nilpotent_form(group_fixture("ex13")));
    CHECK_FALSE(is_nilpotent_form(group_fixture("ex16")));
    CHECK(is_nilpotent_form(group_fixture("heisenberg")));
  }

  TEST_CASE("weights") {
    auto w = compute_weights(validate(free_abelian(3)));
    CHECK(w.weights == std::vector<long>{1, 1, 1});
    CHECK(w.d == 1);

    auto h = compute_weights(group_fixture("heisenberg"));
    CHECK(h.weights == std::vector<long>{1, 1, 2});
    CHECK(h.d == 2);

    RawGroupPresentation raw;
    raw.n = 2;
    raw.orders = {RelativeOrder(2), RelativeOrder(2)};
    raw.power[1] = {{2, 1}};
    auto e = compute_weights(validate(raw));
    CHECK(e.weights == std::vector<long>{1, 1});

    CHECK(kind_of([] { compute_weights(group_fixture("ex13")); }) == ErrorKind::NotNilpotentForm);
  }

  TEST_CASE("weights are minimal: lowering any weight breaks a constraint") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      auto p = validate(random_finite_group(rng, GroupShape::Nilpotent));
      auto w = compute_weights(p);
      const int n = p.size();
      auto satisfied = [&](const std::vector<long>& ws) {
        auto W = [&](Gen g) { return ws[static_cast<std::size_t>(g - 1)]; };
        for (Gen i = 1; i <= n; ++i) {
          if (ws[static_cast<std::size_t>(i - 1)] < 1) return false;
          if (const auto* e = p.power_tail(i))
            for (Gen k = i + 1; k <= n; ++k)
              if (e->at(k) != 0 && W(k) < W(i)) return false;
          for (Gen j = i + 1; j <= n; ++j)
            for (Gen k = j + 1; k <= n; ++k)
              if (p.conj_tail(i, j).at(k) != 0 && W(k) < W(i) + W(j)) return false;
        }
        return true;
      };
      REQUIRE(satisfied(w.weights));
      for (std::size_t g = 0; g < w.weights.size(); ++g) {
        auto lower = w.weights;
        --lower[g];
        CHECK_FALSE(satisfied(lower));
      }
      CHECK(w.d == *std::max_element(w.weights.begin(), w.weights.end()));
    }
  }

  TEST_CASE("to_raw round-trips through validate") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
      auto p = validate(random_mixed_group(rng));
      CHECK(validate(to_raw(p)) == p);
    }
  }
}
