#include <doctest.h>

#include "tubealg/verify.hpp"

using namespace tubealg;

TEST_CASE("quick suite passes and is deterministic")
{
    for (long q : {1L, 2L}) {
        QParam P(q);
        auto a = verify_all("quick", P, 1);
        CHECK(a.passed());
        CHECK(a.kmax == 4);
        auto b = verify_all("quick", P, 3);
        CHECK(to_json(a).dump() == to_json(b).dump());
        CHECK(to_json(a).at("schema_version") == schema_version);
    }
    CHECK_THROWS(verify_all("medium", QParam(2)));
}

TEST_CASE("checks record failures with their inputs")
{
    Check c("demo");
    CHECK_FALSE(c.passed());
    c.expect(true, {{"i", 0}});
    CHECK(c.passed());
    for (int i = 1; i <= 30; ++i) c.expect(false, {{"i", i}});
    CHECK(c.failed == 30);
    CHECK(c.failures.size() == 20);
    CHECK(c.failures.front().at("i") == 1);
    CHECK_FALSE(c.passed());
}

TEST_CASE("gluing transcript records the step profile")
{
    auto c = check_gluing(QParam(2), 2);
    CHECK(c.passed());
    REQUIRE(c.measured.size() == 2);
    for (auto& m : c.measured) {
        CHECK(m.at("final_deviation").get<double>() < 1e-6);
        CHECK(m.at("first_step_below_tolerance").get<int>() > 0);
        CHECK(m.contains("deviation_at_25"));
    }
}
