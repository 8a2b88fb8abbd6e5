#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/eval.h"
#include "optmon/suite.h"
#include "test_support.h"

#include <filesystem>

using namespace optmon;
using namespace testing_support;

TEST_CASE("generated suite is labelled by exhaustive search") {
    auto dir = std::filesystem::temp_directory_path() / "optmon-suite-test";
    std::filesystem::remove_all(dir);
    auto suite = generate_suite(dir.string());
    CHECK(suite.cases >= 60);
    auto cases = parse_manifest(read_file(suite.manifest_path), dir.string());
    CHECK(cases.size() == suite.cases);
    std::set<std::string> groups;
    for (const auto &c : cases) {
        CAPTURE(c.id);
        groups.insert(c.domain_name);
        auto inst = load_instance_files(c.domain_path, c.problem_path);
        auto obs = parse_observations(read_file(c.observations_path), inst);
        CHECK(validate_plan(inst, obs.steps).failed_index == std::nullopt);
        if (c.task != EvalTask::optimality)
            continue;
        for (std::size_t i : c.annotated)
            CHECK(i < obs.size());
        // Every generated trace reaches the goal; optimal ones are labelled clean.
        CHECK(validate_plan(inst, obs.steps).valid);
        int lstar = oracle_distance(inst, to_bag(inst.init), inst.goal);
        if (c.id.find("-optimal") != std::string::npos) {
            CHECK(static_cast<int>(obs.size()) == lstar);
            CHECK(c.annotated.empty());
        } else {
            CHECK(static_cast<int>(obs.size()) > lstar);
        }
    }
    CHECK(groups == std::set<std::string>{"ferry", "grid", "logistics"});
}

TEST_CASE("generation is deterministic for a seed") {
    auto a = std::filesystem::temp_directory_path() / "optmon-suite-a";
    auto b = std::filesystem::temp_directory_path() / "optmon-suite-b";
    auto sa = generate_suite(a.string());
    auto sb = generate_suite(b.string());
    CHECK(read_file(sa.manifest_path) == read_file(sb.manifest_path));
}
