#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/errors.h"
#include "optmon/observations.h"
#include "optmon/planning.h"
#include "test_support.h"

using namespace optmon;
using namespace testing_support;

TEST_CASE("progress returns bottom on unmet preconditions") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    State s = inst.initial_state();
    CHECK_FALSE(progress(s, inst.actions[action(inst, "(drive truck1 l1 l2 city1)")]).has_value());
    auto next = progress(s, inst.actions[action(inst, "(drive truck1 l3 l2 city1)")]);
    REQUIRE(next.has_value());
    CHECK(next->contains(fact(inst, "(at truck1 l2)")));
    CHECK_FALSE(next->contains(fact(inst, "(at truck1 l3)")));
}

TEST_CASE("observation parsing") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto obs = parse_observations("; c\n\n(Drive TRUCK1 L3 L2 CITY1)\n", inst);
    REQUIRE(obs.size() == 1);
    CHECK(inst.actions[obs.steps[0]].name == "(drive truck1 l3 l2 city1)");
    try {
        parse_observations("(drive truck1 l3 l2 city1)\n(drive truck1 l3 l2 citty1)\n", inst);
        FAIL("expected an observation error");
    } catch (const ObservationError &e) {
        CHECK(e.line() == 2);
        CHECK(e.suggestion() == "(drive truck1 l3 l2 city1)");
    }
    CHECK_THROWS_AS(parse_observations("drive truck1 l3 l2 city1\n", inst), ObservationError);
    CHECK(parse_observations(format_observations(obs, inst), inst).steps == obs.steps);
}

TEST_CASE("Table 1 plans validate") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto opt = load_obs(inst, "fig1-optimal.obs");
    auto sub = load_obs(inst, "fig1-suboptimal.obs");
    CHECK(opt.size() == 8);
    CHECK(sub.size() == 12);
    CHECK(validate_plan(inst, opt.steps).valid);
    CHECK(validate_plan(inst, sub.steps).valid);
    Plan broken = {action(inst, "(loadtruck box1 truck1 l2)")};
    auto v = validate_plan(inst, broken);
    CHECK_FALSE(v.valid);
    REQUIRE(v.failed_index.has_value());
    CHECK(*v.failed_index == 0);
}

TEST_CASE("BFS enumerates every optimal plan of Fig. 1") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto res = bfs_optimal_plans(inst, 20);
    REQUIRE(res.length.has_value());
    CHECK(*res.length == 8);
    CHECK(static_cast<int>(*res.length) ==
          oracle_distance(inst, to_bag(inst.init), inst.goal));
    CHECK_FALSE(res.truncated);
    CHECK(std::is_sorted(res.plans.begin(), res.plans.end()));
    // Independent count: every length-8 goal-reaching sequence.
    std::size_t count = 0;
    enumerate_plans(inst, to_bag(inst.init), inst.goal, 8,
                    [&](const std::vector<FactBag> &trail) { count += trail.size() == 9; });
    CHECK(res.plans.size() == count);
    for (const auto &plan : res.plans)
        CHECK(validate_plan(inst, plan).valid);
    auto opt = load_obs(inst, "fig1-optimal.obs");
    CHECK(std::find(res.plans.begin(), res.plans.end(), opt.steps) != res.plans.end());
}

TEST_CASE("Def 9 on the Table 1 sub-optimal plan") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto sub = load_obs(inst, "fig1-suboptimal.obs");
    auto res = bfs_optimal_plans(inst, 20);
    auto chosen = select_consistent_plan(inst, inst.initial_state(), sub, res.plans);
    REQUIRE(chosen.has_value());
    auto kept = contributing_actions(inst, sub, res.plans[*chosen]);
    // By hand: steps 2-4 (unload at L2, drive to L1 and back) are not in any
    // optimal plan; the repeated load at step 5 is a member.
    CHECK(kept == std::vector<std::size_t>{0, 1, 5, 6, 7, 8, 9, 10, 11});
    CHECK(non_contributing_indices(sub.size(), kept) == std::vector<std::size_t>{2, 3, 4});
    auto opt = load_obs(inst, "fig1-optimal.obs");
    CHECK(non_contributing_indices(opt.size(),
                                   contributing_actions(inst, opt, res.plans[*chosen]))
              .empty());
}

TEST_CASE("Def 9 stops at an inapplicable observation") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto plan = bfs_optimal_plans(inst, 20).plans.front();
    ObservationSequence obs{{action(inst, "(drive truck1 l3 l2 city1)"),
                             action(inst, "(unloadtruck box1 truck1 a1)"),
                             action(inst, "(loadtruck box1 truck1 l2)")}};
    CHECK(contributing_actions(inst, obs, plan) == std::vector<std::size_t>{0});
}

TEST_CASE("random instances: BFS length and plans agree with the oracle") {
    std::mt19937 rng(7);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto inst = random_instance(rng);
        int d = oracle_distance(inst, to_bag(inst.init), inst.goal);
        auto res = bfs_optimal_plans(inst, 30);
        if (d == INT_MAX) {
            CHECK_FALSE(res.length.has_value());
            continue;
        }
        ++checked;
        REQUIRE(res.length.has_value());
        CHECK(static_cast<int>(*res.length) == d);
        auto len = optimal_plan_length(inst, inst.initial_state(), inst.goal, 30);
        REQUIRE(len.has_value());
        CHECK(static_cast<int>(*len) == d);
        for (const auto &plan : res.plans) {
            CHECK(plan.size() == static_cast<std::size_t>(d));
            CHECK(validate_plan(inst, plan).valid);
        }
    }
    CHECK(checked > 20);
}
