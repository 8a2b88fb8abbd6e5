#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/landmarks.h"
#include "optmon/monitor.h"
#include "test_support.h"

using namespace optmon;
using namespace testing_support;

namespace {

bool satisfied(const FactBag &s, const Landmark &lm) {
    if (lm.kind == LandmarkKind::conjunctive)
        return oracle_holds(s, lm.facts);
    return std::any_of(lm.facts.begin(), lm.facts.end(), [&](FactId f) { return s.count(f) > 0; });
}

// A landmark is sound up to `depth` when no plan of that length avoids it.
bool sound(const PlanningInstance &inst, const Landmark &lm, int depth) {
    return !goal_avoiding(inst, to_bag(inst.init), inst.goal, depth,
                          [&](const FactBag &s) { return satisfied(s, lm); });
}

Landmark conj(const PlanningInstance &inst, const std::vector<std::string> &texts) {
    return Landmark{LandmarkKind::conjunctive, facts(inst, texts)};
}

}  // namespace

TEST_CASE("Fig. 1 conjunctive landmarks") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto graph = extract_landmarks(inst);
    std::vector<Landmark> expected = {
        conj(inst, {"(at box1 a2)"}),
        conj(inst, {"(at plane1 a2)", "(in box1 plane1)"}),
        conj(inst, {"(at plane1 a1)", "(at box1 a1)"}),
        conj(inst, {"(at plane1 a2)"}),
        conj(inst, {"(at truck1 l3)"}),
        conj(inst, {"(in box1 truck1)", "(at truck1 a1)"}),
        conj(inst, {"(at box1 l2)", "(at truck1 l2)"}),
    };
    for (const auto &lm : expected) {
        CAPTURE(format_landmark(inst, lm));
        CHECK(graph.find(lm).has_value());
    }
    std::set<Landmark> unique(graph.landmarks.begin(), graph.landmarks.end());
    CHECK(unique.size() == graph.landmarks.size());
    for (const auto &lm : graph.landmarks) {
        CAPTURE(format_landmark(inst, lm));
        CHECK(verify_landmark(inst, lm));
        CHECK(sound(inst, lm, 8 + 2));
    }
}

TEST_CASE("Fig. 1 orderings point towards the goal") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    auto graph = extract_landmarks(inst);
    auto goal = graph.find(conj(inst, {"(at box1 a2)"}));
    auto in_plane = graph.find(conj(inst, {"(at plane1 a2)", "(in box1 plane1)"}));
    REQUIRE(goal);
    REQUIRE(in_plane);
    CHECK(std::find(graph.orderings.begin(), graph.orderings.end(),
                    std::make_pair(*in_plane, *goal)) != graph.orderings.end());
    auto dot = format_orderings_dot(inst, graph);
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("landmark distances on Fig. 1") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    State s = inst.initial_state();
    CHECK(landmark_distance(inst, s, conj(inst, {"(at box1 l2)", "(at truck1 l2)"})) == 1);
    CHECK(landmark_distance(inst, s, conj(inst, {"(at plane1 a2)"})) == 0);
    Landmark either{LandmarkKind::disjunctive,
                    facts(inst, {"(at truck1 l1)", "(at truck1 a1)", "(at truck1 l3)"})};
    CHECK(landmark_distance(inst, s, either) == 0);
    CHECK(format_landmark(inst, either) == "(or (at truck1 a1) (at truck1 l1) (at truck1 l3))");
}

TEST_CASE("unsound candidates are rejected") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig1.pddl");
    // The truck may reach A1 from L2 or L3, so L1 is not needed.
    CHECK_FALSE(verify_landmark(inst, conj(inst, {"(at truck1 l1)"})));
    CHECK_FALSE(sound(inst, conj(inst, {"(at truck1 l1)"}), 10));
}

TEST_CASE("landmarks on the other fixtures are sound") {
    for (auto [d, p] : std::vector<std::pair<std::string, std::string>>{
             {"blocksworld-domain.pddl", "blocksworld-p1.pddl"},
             {"grid-domain.pddl", "grid-p1.pddl"},
             {"ferry-domain.pddl", "ferry-p1.pddl"}}) {
        CAPTURE(p);
        auto inst = load_fixture(d, p);
        int lstar = oracle_distance(inst, to_bag(inst.init), inst.goal);
        REQUIRE(lstar != INT_MAX);
        auto graph = extract_landmarks(inst);
        CHECK(graph.find(Landmark{LandmarkKind::conjunctive, inst.goal}).has_value());
        for (const auto &lm : graph.landmarks) {
            CAPTURE(format_landmark(inst, lm));
            CHECK(sound(inst, lm, lstar + 2));
        }
    }
}

TEST_CASE("randomized landmark soundness") {
    std::mt19937 rng(99);
    int solvable = 0, unsound = 0;
    while (solvable < 200) {
        auto inst = random_instance(rng);
        int lstar = oracle_distance(inst, to_bag(inst.init), inst.goal);
        if (lstar == INT_MAX)
            continue;
        ++solvable;
        for (const auto &lm : extract_landmarks(inst).landmarks)
            if (!sound(inst, lm, lstar + 2))
                ++unsound;
    }
    CHECK(unsound == 0);
}
