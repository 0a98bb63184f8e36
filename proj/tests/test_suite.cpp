#include "doctest.h"

#include "uekit/error.hpp"
#include "uekit/suite.hpp"

#include "json.hpp"

using namespace uekit;

TEST_CASE("a seeded run passes every law") {
    const SuiteResult r = run_suite({.seed = 7, .count = 60, .max_states = 5});
    CHECK(r.passed);
    const auto j = nlohmann::json::parse(r.json);
    CHECK(j["status"] == "pass");
    CHECK(j["seed"] == 7);
    CHECK_FALSE(j.contains("counterexample"));
    CHECK(j["laws"].size() == 13);
    for (const auto& [name, counts] : j["laws"].items()) {
        CAPTURE(name);
        CHECK(counts["failed"] == 0);
        CHECK(counts["passed"].get<int>() > 0);
    }
}

TEST_CASE("count 0 runs nothing") {
    const SuiteResult r = run_suite({.seed = 1, .count = 0, .max_states = 5});
    CHECK(r.passed);
    const auto j = nlohmann::json::parse(r.json);
    CHECK(j["laws"].empty());
    CHECK(j["status"] == "pass");
}

TEST_CASE("the delta mutant is caught") {
    const SuiteResult r = run_suite({.seed = 7, .count = 40, .max_states = 5, .delta_mutant = true});
    CHECK_FALSE(r.passed);
    const auto j = nlohmann::json::parse(r.json);
    CHECK(j["status"] == "fail");
    REQUIRE(j.contains("counterexample"));
    CHECK(j["counterexample"].contains("law"));
}

TEST_CASE("runs are deterministic") {
    const SuiteConfig c{.seed = 99, .count = 25, .max_states = 4};
    CHECK(run_suite(c).json == run_suite(c).json);
    CHECK(run_suite(c).json != run_suite({.seed = 100, .count = 25, .max_states = 4}).json);
}

TEST_CASE("state bound is validated") {
    CHECK_THROWS_AS(run_suite({.seed = 1, .count = 1, .max_states = 0}), SemanticError);
    CHECK_THROWS_AS(run_suite({.seed = 1, .count = 1, .max_states = suite_state_cap + 1}), SemanticError);
    CHECK(run_suite({.seed = 1, .count = 3, .max_states = suite_state_cap}).passed);
}
