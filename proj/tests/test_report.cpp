#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "pcp/report.hpp"

using namespace pcp;
using namespace pcp::testing;

TEST_SUITE("report") {
  TEST_CASE("text rendering") {
    auto r16 = check_consistency(group_fixture("ex16"));
    CHECK(render_report(r16, ReportFormat::Text) ==
          "FAIL G4(i=1,j=2): lhs g2^2 != rhs g2\nINCONSISTENT (1 of 1 equations failed)\n");
    auto s3 = check_consistency(group_fixture("s3"));
    CHECK(render_report(s3, ReportFormat::Text) == "CONSISTENT (4 equations checked)\n");
  }

  TEST_CASE("group JSON") {
    auto j = nlohmann::json::parse(render_report(check_consistency(group_fixture("ex13")), ReportFormat::Json));
    CHECK(j["schema"] == 1);
    CHECK(j["mode"] == "full");
    CHECK(j["consistent"] == false);
    REQUIRE(j["failures"].size() == 1);
    CHECK(j["failures"][0]["tag"] == "G1");
    CHECK(j["failures"][0]["indices"] == nlohmann::json::array({1, 2, 3}));
    CHECK(j["failures"][0]["lhs"] == "g2*g3^-1*g1");
    CHECK(j["failures"][0]["lhs_nf"] == "g1*g2^-1*g3^-1");
    CHECK(j["counts"]["evaluated"] == 4);
  }

  TEST_CASE("algebra JSON") {
    auto j = nlohmann::json::parse(render_report(check_algebra_consistency(algebra_fixture("ex25")), ReportFormat::Json));
    CHECK(j["kind"] == "algebra");
    CHECK(j["mode"] == "nilpotent");
    REQUIRE(j["failures"].size() == 1);
    CHECK(j["failures"][0]["tag"] == "A2");
    CHECK(j["failures"][0]["lhs"] == "2*(a1*a2)");
    CHECK(j["failures"][0]["lhs_nf"] == "2*a3");
    CHECK(j["failures"][0]["rhs_nf"] == "0");
  }

  TEST_CASE("oracle JSON") {
    auto j = nlohmann::json::parse(render_report(verify_group_axioms(group_fixture("d4")), ReportFormat::Json));
    CHECK(j["verdict"] == true);
    CHECK(j["order"] == 8);
    CHECK(j["witness"].is_null());
  }

  TEST_CASE("rendering is deterministic") {
    auto p = group_fixture("ex14");
    CHECK(render_report(check_consistency(p), ReportFormat::Json) ==
          render_report(check_consistency(p), ReportFormat::Json));
  }
}
