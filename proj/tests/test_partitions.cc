#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/partitions.h"
#include "property_checks.h"

using namespace optmon;
using namespace testing_support;

TEST_CASE("Blocks-World has no partitioned facts") {
    auto inst = load_fixture("blocksworld-domain.pddl", "blocksworld-p1.pddl");
    auto parts = partition_facts(inst);
    CHECK(parts.strictly_activating.empty());
    CHECK(parts.unstable_activating.empty());
    CHECK(parts.strictly_terminal.empty());
}

TEST_CASE("grid has strictly and unstable activating facts") {
    auto inst = load_fixture("grid-domain.pddl", "grid-p1.pddl");
    auto parts = partition_facts(inst);
    CHECK(std::binary_search(parts.strictly_activating.begin(), parts.strictly_activating.end(),
                             fact(inst, "(conn n00 n10)")));
    CHECK(parts.unstable_activating == facts(inst, {"(locked n21)"}));
    CHECK(parts.strictly_terminal.empty());
    auto text = format_partitions(inst, parts);
    CHECK(text.find("(locked n21)") != std::string::npos);
}

TEST_CASE("logistics static facts are strictly activating") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto parts = partition_facts(inst);
    CHECK(std::binary_search(parts.strictly_activating.begin(), parts.strictly_activating.end(),
                             fact(inst, "(road l3 l2)")));
    CHECK(parts.unstable_activating.empty());
}

TEST_CASE("a start state changes which facts qualify") {
    auto inst = load_fixture("grid-domain.pddl", "grid-p1.pddl");
    State s = inst.initial_state();
    s.erase(fact(inst, "(locked n21)"));
    CHECK(partition_facts_from(inst, s).unstable_activating.empty());
}

TEST_CASE("random walks never contradict the partitions") {
    std::mt19937 rng(5);
    int total = 0;
    for (auto [d, p] : std::vector<std::pair<std::string, std::string>>{
             {"blocksworld-domain.pddl", "blocksworld-p1.pddl"},
             {"grid-domain.pddl", "grid-p1.pddl"},
             {"ferry-domain.pddl", "ferry-p1.pddl"},
             {"logistics-domain.pddl", "logistics-fig1.pddl"}})
        total += partition_walk_violations(load_fixture(d, p), rng, 1000, 30);
    int nonempty = 0;
    for (int i = 0; i < 200; ++i) {
        auto inst = random_instance(rng);
        auto parts = partition_facts(inst);
        nonempty += !parts.strictly_activating.empty() || !parts.unstable_activating.empty() ||
                    !parts.strictly_terminal.empty();
        total += partition_walk_violations(inst, rng, 1000, 15);
    }
    CHECK(nonempty > 0);
    CHECK(total == 0);
}
