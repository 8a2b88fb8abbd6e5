#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/heuristics.h"
#include "property_checks.h"

using namespace optmon;
using namespace testing_support;

TEST_CASE("heuristic names round-trip") {
    for (HeuristicId id : all_heuristics()) {
        auto parsed = parse_heuristic(heuristic_name(id));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == id);
    }
    CHECK(parse_heuristic("HFF") == HeuristicId::hff);
    CHECK_FALSE(parse_heuristic("lmcut").has_value());
    CHECK(cost_to_string(kInfinity) == "inf");
}

TEST_CASE("Fig. 1 relaxed costs against the fixpoint oracle") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    State s = inst.initial_state();
    auto bag = to_bag(inst.init);
    for (const auto &goal :
         {facts(inst, {"(at box1 a2)"}), facts(inst, {"(at plane1 a2)", "(in box1 plane1)"}),
          facts(inst, {"(in box1 truck1)", "(at truck1 a1)"}),
          facts(inst, {"(at box1 l2)", "(at truck1 l2)"}), facts(inst, {"(at truck1 l1)"})}) {
        CHECK(h_max(inst, s, goal) == oracle_relaxed_cost(inst, bag, goal, false));
        CHECK(h_sum(inst, s, goal) == oracle_relaxed_cost(inst, bag, goal, true));
    }
    // Hand-computed levels: truck reaches A1 at 1, box in truck at 2, box at
    // A1 at 3, box in plane at 4, box at A2 at 5.
    CHECK(h_max(inst, s, inst.goal) == 5);
    CHECK(h_sum(inst, s, inst.goal) == 7);
    // Relaxed plan: drive L3->L2, load, drive L3->A1, unload, fly A2->A1,
    // load, unload at A2.
    CHECK(h_ff(inst, s, inst.goal) == 7);
    CHECK(h_max(inst, s, FactSet{}) == 0);
}

TEST_CASE("Fig. 1 relaxed plan is delete-free executable") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto graph = build_relaxed_graph(inst, inst.initial_state());
    auto plan = relaxed_plan(inst, graph, inst.goal);
    REQUIRE(plan.has_value());
    FactBag s = to_bag(inst.init);
    for (ActionId a : *plan) {
        for (FactId p : inst.actions[a].pre)
            CHECK(s.count(p));
        for (FactId f : inst.actions[a].add)
            s.insert(f);
    }
    CHECK(oracle_holds(s, inst.goal));
}

TEST_CASE("Fig. 1 set-level lies between h_max and the optimum") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    State s = inst.initial_state();
    Cost sl = set_level(inst, s, inst.goal);
    CHECK(sl >= h_max(inst, s, inst.goal));
    CHECK(sl <= 8);
    MutexGraph graph(inst, s);
    // The truck cannot be in two places at level 1.
    CHECK(graph.mutex(1, fact(inst, "(at truck1 l1)"), fact(inst, "(at truck1 l2)")));
    CHECK_FALSE(graph.mutex(1, fact(inst, "(at truck1 l2)"), fact(inst, "(at plane1 a1)")));
}

TEST_CASE("adjusted heuristics follow their formulas on Fig. 1") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    State s = inst.initial_state();
    FactSet g = facts(inst, {"(at box1 l1)", "(at truck1 l3)"});
    Cost hs = h_sum(inst, s, g), hf = h_ff(inst, s, g), sl = set_level(inst, s, g);
    auto graph = build_relaxed_graph(inst, s);
    Cost max_level = 0, max_single = 0;
    for (FactId f : g) {
        max_level = std::max(max_level, graph.fact_level[f]);
        max_single = std::max(max_single, set_level(inst, s, FactSet{f}));
    }
    CHECK(h_adjsum(inst, s, g) == hs + (sl - max_level));
    CHECK(h_adjsum2(inst, s, g) == hf + (sl - max_level));
    CHECK(h_adjsum2m(inst, s, g) == hf + (sl - max_single));
    CHECK(h_combo(inst, s, g) == hs + (sl - max_level) + sl);
}

TEST_CASE("randomized heuristic properties") {
    std::mt19937 rng(2024);
    int instances = 0, violations = 0;
    std::string first;
    while (instances < 200) {
        auto inst = random_instance(rng);
        std::size_t reachable = 0;
        oracle_distance(inst, to_bag(inst.init), inst.goal, &reachable);
        if (reachable > 100000)
            continue;
        ++instances;
        violations += heuristic_violations(inst, rng, &first);
    }
    CAPTURE(first);
    CHECK(violations == 0);
}
