#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmon/commitment.h"
#include "optmon/errors.h"
#include "property_checks.h"

#include <cmath>

using namespace optmon;
using namespace testing_support;

TEST_CASE("commitment files") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig4-c2.pddl");
    auto c = load_commitment(read_file(fixture("fig4-c2.commitment")), inst);
    CHECK(c.debtor == "plane1");
    CHECK(c.creditor == "truck1");
    CHECK(c.consequent == facts(inst, {"(at box1 a3)", "(at box2 a4)"}));
    CHECK(c.antecedent == facts(inst, {"(at box1 a1)", "(at box2 a1)"}));
    CHECK(c.threshold == doctest::Approx(0.3));
    CHECK(c.debtor_start == 3);
    auto zero = load_commitment("(commitment :debtor a :creditor b :antecedent ((at box1 a1))"
                                " :consequent ((at box1 a3)) :threshold 0)",
                                inst);
    CHECK(zero.threshold == 0.0);
    CHECK_THROWS_AS(load_commitment("(commitment :debtor a :creditor b :antecedent ((at box1 a1))"
                                    " :consequent ((at box1 a3)) :threshold 1.5)",
                                    inst),
                    CommitmentError);
    CHECK_THROWS_AS(load_commitment("(commitment :debtor a :creditor b :antecedent ((at box1 zz))"
                                    " :consequent ((at box1 a3)) :threshold 0.1)",
                                    inst),
                    CommitmentError);
}

TEST_CASE("C1 on the Fig. 4 fixture") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig4-c1.pddl");
    auto c = load_commitment(read_file(fixture("fig4-c1.commitment")), inst);
    auto v = has_abandoned(inst, c, load_obs(inst, "fig4-c1.obs"));
    CHECK(v.debtor_steps == 4);
    CHECK(v.allowed == 0.0);
    REQUIRE(v.report.verdicts.size() == 4);
    // Step 1 leaves A1 while (at truck1 a1) is still an active landmark, so it
    // is predicted; step 2 shortens the remaining route.
    CHECK(v.report.verdicts[1].predicted);
    CHECK(v.report.verdicts[2].distance_after < v.report.verdicts[2].distance_before);
    CHECK(v.sub_optimal_count == 0);
    CHECK_FALSE(v.abandoned);
}

TEST_CASE("C2 on the Fig. 4 fixture") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig4-c2.pddl");
    auto c = load_commitment(read_file(fixture("fig4-c2.commitment")), inst);
    auto obs = load_obs(inst, "fig4-c2.obs");
    auto v = has_abandoned(inst, c, obs);
    CHECK(v.debtor_steps == 9);
    CHECK(std::abs(v.allowed - 2.7) < 1e-9);
    CHECK_FALSE(v.abandoned);
    CHECK(v.reason == AbandonReason::still_committed);
    REQUIRE(v.report.verdicts.size() == 9);
    CHECK(v.report.verdicts[0].predicted);
    CHECK(inst.actions[v.report.verdicts[0].action].name == "(fly plane1 a2 a1)");
    // Steps 3 and 4 fly A1->A2->A1: unpredicted, but the relaxed distance is
    // unchanged because the plane has to fly once more either way.
    CHECK_FALSE(v.report.verdicts[3].predicted);
    CHECK(v.report.verdicts[3].distance_after == v.report.verdicts[3].distance_before);
    CHECK(v.sub_optimal_count == 0);
    CHECK(v.consequent_reached_at == std::optional<std::size_t>{9});
    CHECK(format_verdict_line(v) == "COMMITTED");
}

TEST_CASE("antecedent must hold after the creditor prefix") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig4-c2.pddl");
    auto c = load_commitment(read_file(fixture("fig4-c2.commitment")), inst);
    c.debtor_start = 0;
    CHECK_THROWS_AS(has_abandoned(inst, c, load_obs(inst, "fig4-c2.obs")), CommitmentError);
}

TEST_CASE("empty debtor observations are still committed") {
    auto inst = load_fixture("logistics-domain.pddl", "logistics-fig4-c1.pddl");
    Commitment c;
    c.antecedent = facts(inst, {"(at box3 a2)"});
    c.consequent = facts(inst, {"(at box3 l1)"});
    for (double theta : {0.0, 0.5, 1.0}) {
        c.threshold = theta;
        auto v = has_abandoned(inst, c, ObservationSequence{});
        CHECK_FALSE(v.abandoned);
        CHECK(v.reason == AbandonReason::still_committed);
    }
}

TEST_CASE("grid partitions are reported with the verdict") {
    auto inst = load_fixture("grid-domain.pddl", "grid-p1.pddl");
    Commitment c;
    c.antecedent = facts(inst, {"(arm-empty)"});
    c.consequent = facts(inst, {"(at-robot n21)"});
    c.threshold = 1.0;
    auto v = has_abandoned(inst, c, ObservationSequence{});
    CHECK_FALSE(v.abandoned);
    CHECK_FALSE(v.partitions.unstable_activating.empty());
}

TEST_CASE("θ-monotonicity and online equivalence on the worked examples") {
    int violations = 0;
    for (const char *name : {"c1", "c2"}) {
        auto inst = load_fixture("logistics-domain.pddl",
                                 std::string("logistics-fig4-") + name + ".pddl");
        auto c = load_commitment(
            read_file(fixture(std::string("fig4-") + name + ".commitment")), inst);
        auto obs = load_obs(inst, std::string("fig4-") + name + ".obs");
        for (HeuristicId id : all_heuristics()) {
            CommitmentConfig config;
            config.monitor.heuristic = id;
            violations += monotonicity_violations(inst, c, obs, config);
        }
        violations += online_mismatches(inst, c, obs);
    }
    CHECK(violations == 0);
}

TEST_CASE("θ-monotonicity and online equivalence on random cases") {
    std::mt19937 rng(31);
    int cases = 0, violations = 0;
    while (cases < 100) {
        auto inst = random_instance(rng);
        if (oracle_distance(inst, to_bag(inst.init), inst.goal) == INT_MAX)
            continue;
        Commitment c;
        c.antecedent = FactSet{inst.init.front()};
        c.consequent = inst.goal;
        auto obs = random_walk(inst, rng, 8);
        ++cases;
        violations += monotonicity_violations(inst, c, obs);
        violations += online_mismatches(inst, c, obs);
    }
    CHECK(violations == 0);
}

TEST_CASE("deleting a one-shot fact the consequent needs abandons the commitment") {
    auto inst = load_instance(R"((define (domain fuel) (:requirements :strips)
      (:predicates (fuel) (at-a) (at-b) (ready) (spilled))
      (:action go :parameters () :precondition (and (fuel) (at-a) (ready))
        :effect (and (at-b) (not (at-a)) (not (fuel))))
      (:action spill :parameters () :precondition (fuel)
        :effect (and (spilled) (not (fuel))))))",
                              R"((define (problem f) (:domain fuel)
      (:init (fuel) (at-a) (ready)) (:goal (at-b))))");
    auto parts = partition_facts(inst);
    CHECK(parts.unstable_activating == facts(inst, {"(at-a)", "(fuel)"}));
    CHECK(parts.strictly_activating == facts(inst, {"(ready)"}));
    CHECK(parts.strictly_terminal == facts(inst, {"(at-b)", "(spilled)"}));
    Commitment c;
    c.antecedent = facts(inst, {"(ready)"});
    c.consequent = facts(inst, {"(at-b)"});
    c.threshold = 1.0;
    auto spill = has_abandoned(inst, c, ObservationSequence{{action(inst, "(spill)")}});
    CHECK(spill.abandoned);
    CHECK(spill.reason == AbandonReason::partition_unreachable);
    CHECK(format_verdict_line(spill) == "ABANDONED partition_unreachable");
    auto go = has_abandoned(inst, c, ObservationSequence{{action(inst, "(go)")}});
    CHECK_FALSE(go.abandoned);
}

TEST_CASE("a missing strictly activating fact abandons at once") {
    // Built by hand: the grounder would already drop an action whose static
    // precondition is false initially.
    PlanningInstance inst;
    inst.facts = {"(at-a)", "(at-b)", "(fuel)", "(ready)", "(road)"};
    inst.actions = {GroundAction{"(go)", {0, 2, 3, 4}, {1}, {0, 2}}};
    inst.init = {0, 2, 4};
    inst.goal = {1};
    inst.finalize();
    CHECK(partition_facts(inst).strictly_activating == FactSet{4});
    Commitment c;
    c.antecedent = {2};
    c.consequent = {1};
    c.threshold = 1.0;
    auto v = has_abandoned(inst, c, ObservationSequence{});
    // (ready) can never be produced, so the only achiever of (at-b) is dead.
    CHECK(v.abandoned);
    CHECK(v.reason == AbandonReason::strictly_activating_violation);
}
