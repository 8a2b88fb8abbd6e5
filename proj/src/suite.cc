#include "optmon/suite.h"

#include "optmon/errors.h"
#include "optmon/grounding.h"
#include "optmon/io.h"
#include "optmon/planning.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

namespace optmon {

std::string logistics_domain_text() {
    return R"((define (domain logistics)
  (:requirements :strips :typing :equality)
  (:types truck airplane - vehicle
          package vehicle - physobj
          airport - location
          physobj location city - object)
  (:predicates (at ?x - physobj ?l - location) (in ?p - package ?v - vehicle)
               (in-city ?l - location ?c - city) (road ?from ?to - location))
  (:action drive
    :parameters (?t - truck ?from ?to - location ?c - city)
    :precondition (and (at ?t ?from) (in-city ?from ?c) (in-city ?to ?c) (road ?from ?to))
    :effect (and (at ?t ?to) (not (at ?t ?from))))
  (:action loadTruck
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (at ?t ?l) (at ?p ?l))
    :effect (and (in ?p ?t) (not (at ?p ?l))))
  (:action unloadTruck
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (at ?t ?l) (in ?p ?t))
    :effect (and (at ?p ?l) (not (in ?p ?t))))
  (:action fly
    :parameters (?a - airplane ?from ?to - airport)
    :precondition (and (at ?a ?from) (not (= ?from ?to)))
    :effect (and (at ?a ?to) (not (at ?a ?from))))
  (:action loadAirplane
    :parameters (?p - package ?a - airplane ?l - airport)
    :precondition (and (at ?a ?l) (at ?p ?l))
    :effect (and (in ?p ?a) (not (at ?p ?l))))
  (:action unloadAirplane
    :parameters (?p - package ?a - airplane ?l - airport)
    :precondition (and (at ?a ?l) (in ?p ?a))
    :effect (and (at ?p ?l) (not (in ?p ?a)))))
)";
}

std::string grid_domain_text() {
    return R"((define (domain grid)
  (:requirements :strips)
  (:predicates (conn ?x ?y) (key-shape ?k ?s) (lock-shape ?x ?s) (at ?r ?x)
               (at-robot ?x) (place ?p) (key ?k) (shape ?s) (locked ?x)
               (holding ?k) (open ?x) (arm-empty))
  (:action unlock
    :parameters (?curpos ?lockpos ?key ?shape)
    :precondition (and (place ?curpos) (place ?lockpos) (key ?key) (shape ?shape)
                       (conn ?curpos ?lockpos) (key-shape ?key ?shape)
                       (lock-shape ?lockpos ?shape) (at-robot ?curpos)
                       (locked ?lockpos) (holding ?key))
    :effect (and (open ?lockpos) (not (locked ?lockpos))))
  (:action move
    :parameters (?curpos ?nextpos)
    :precondition (and (place ?curpos) (place ?nextpos) (at-robot ?curpos)
                       (conn ?curpos ?nextpos) (open ?nextpos))
    :effect (and (at-robot ?nextpos) (not (at-robot ?curpos))))
  (:action pickup
    :parameters (?curpos ?key)
    :precondition (and (place ?curpos) (key ?key) (at-robot ?curpos)
                       (at ?key ?curpos) (arm-empty))
    :effect (and (holding ?key) (not (at ?key ?curpos)) (not (arm-empty))))
  (:action pickup-and-loose
    :parameters (?curpos ?newkey ?oldkey)
    :precondition (and (place ?curpos) (key ?newkey) (key ?oldkey)
                       (at-robot ?curpos) (holding ?oldkey) (at ?newkey ?curpos))
    :effect (and (holding ?newkey) (at ?oldkey ?curpos)
                 (not (holding ?oldkey)) (not (at ?newkey ?curpos))))
  (:action putdown
    :parameters (?curpos ?key)
    :precondition (and (place ?curpos) (key ?key) (at-robot ?curpos) (holding ?key))
    :effect (and (arm-empty) (at ?key ?curpos) (not (holding ?key)))))
)";
}

std::string ferry_domain_text() {
    return R"((define (domain ferry)
  (:requirements :strips)
  (:predicates (not-eq ?x ?y) (car ?c) (place ?p) (at-ferry ?p) (at ?c ?p)
               (on ?c) (empty-ferry))
  (:action sail
    :parameters (?from ?to)
    :precondition (and (not-eq ?from ?to) (place ?from) (place ?to) (at-ferry ?from))
    :effect (and (at-ferry ?to) (not (at-ferry ?from))))
  (:action board
    :parameters (?car ?loc)
    :precondition (and (car ?car) (place ?loc) (at ?car ?loc) (at-ferry ?loc) (empty-ferry))
    :effect (and (on ?car) (not (at ?car ?loc)) (not (empty-ferry))))
  (:action debark
    :parameters (?car ?loc)
    :precondition (and (car ?car) (place ?loc) (on ?car) (at-ferry ?loc))
    :effect (and (at ?car ?loc) (empty-ferry) (not (on ?car)))))
)";
}

namespace {

using Rng = std::mt19937;

std::size_t pick(Rng &rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

struct ProblemSpec {
    std::string name;
    std::string text;
    // A second goal over the same objects, used for traces that pursue
    // something else.
    std::string other_goal;
};

std::string problem_text(const std::string &name, const std::string &domain,
                         const std::string &objects, const std::string &init,
                         const std::string &goal) {
    return "(define (problem " + name + ")\n  (:domain " + domain + ")\n  (:objects " + objects +
           ")\n  (:init " + init + ")\n  (:goal (and " + goal + ")))\n";
}

ProblemSpec logistics_problem(Rng &rng, std::size_t k) {
    // city1: a1 (airport), c1l1, c1l2; city2: a2 (airport), c2l1.
    std::vector<std::string> city1 = {"a1", "c1l1", "c1l2"};
    std::vector<std::string> city2 = {"a2", "c2l1"};
    std::vector<std::string> all = {"a1", "c1l1", "c1l2", "a2", "c2l1"};
    std::size_t packages = 1 + k % 2;
    std::string objects = "t1 t2 - truck p1 - airplane a1 a2 - airport c1l1 c1l2 c2l1 - location "
                          "city1 city2 - city";
    for (std::size_t i = 0; i < packages; ++i)
        objects += " pkg" + std::to_string(i);
    objects += " - package";
    std::string init = "(in-city a1 city1) (in-city c1l1 city1) (in-city c1l2 city1) "
                       "(in-city a2 city2) (in-city c2l1 city2) ";
    for (const auto &x : city1)
        for (const auto &y : city1)
            if (x != y)
                init += "(road " + x + " " + y + ") ";
    init += "(road a2 c2l1) (road c2l1 a2) ";
    init += "(at t1 " + city1[pick(rng, city1.size())] + ") ";
    init += "(at t2 " + city2[pick(rng, city2.size())] + ") ";
    init += "(at p1 " + std::string(pick(rng, 2) ? "a1" : "a2") + ")";
    std::string goal, other;
    for (std::size_t i = 0; i < packages; ++i) {
        std::string p = "pkg" + std::to_string(i);
        std::string from = all[pick(rng, all.size())];
        std::string to, alt;
        do {
            to = all[pick(rng, all.size())];
        } while (to == from);
        do {
            alt = all[pick(rng, all.size())];
        } while (alt == from || alt == to);
        init += " (at " + p + " " + from + ")";
        goal += "(at " + p + " " + to + ") ";
        other += "(at " + p + " " + alt + ") ";
    }
    std::string name = "logistics-g" + std::to_string(k);
    return {name, problem_text(name, "logistics", objects, init, goal),
            problem_text(name + "-other", "logistics", objects, init, other)};
}

ProblemSpec grid_problem(Rng &rng, std::size_t k) {
    const int w = 3, h = 3;
    auto cell = [](int x, int y) { return "n" + std::to_string(x) + std::to_string(y); };
    std::string objects = "k1 triangle";
    std::string init = "(shape triangle) (key k1) (key-shape k1 triangle) (arm-empty) ";
    std::vector<std::string> cells;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            cells.push_back(cell(x, y));
            objects += " " + cell(x, y);
            init += "(place " + cell(x, y) + ") ";
            if (x + 1 < w)
                init += "(conn " + cell(x, y) + " " + cell(x + 1, y) + ") (conn " +
                        cell(x + 1, y) + " " + cell(x, y) + ") ";
            if (y + 1 < h)
                init += "(conn " + cell(x, y) + " " + cell(x, y + 1) + ") (conn " +
                        cell(x, y + 1) + " " + cell(x, y) + ") ";
        }
    // Lock a cell that is not the centre so the grid stays connected.
    std::vector<std::string> lockable = {cell(2, 2), cell(0, 2), cell(2, 0)};
    std::string locked = lockable[pick(rng, lockable.size())];
    std::vector<std::string> free_cells;
    for (const auto &c : cells)
        if (c != locked)
            free_cells.push_back(c);
    std::string robot = free_cells[pick(rng, free_cells.size())];
    std::string key;
    do {
        key = free_cells[pick(rng, free_cells.size())];
    } while (key == robot);
    init += "(lock-shape " + locked + " triangle) (locked " + locked + ") ";
    for (const auto &c : free_cells)
        init += "(open " + c + ") ";
    init += "(at k1 " + key + ") (at-robot " + robot + ")";
    std::string goal, other;
    if (k % 2 == 0) {
        goal = "(at-robot " + locked + ")";
    } else {
        std::string target;
        do {
            target = free_cells[pick(rng, free_cells.size())];
        } while (target == key);
        goal = "(at k1 " + target + ")";
    }
    std::string alt;
    do {
        alt = free_cells[pick(rng, free_cells.size())];
    } while (alt == robot || alt == key);
    other = "(at k1 " + alt + ")";
    if (goal == other)
        other = "(at-robot " + alt + ")";
    std::string name = "grid-g" + std::to_string(k);
    return {name, problem_text(name, "grid", objects, init, goal),
            problem_text(name + "-other", "grid", objects, init, other)};
}

ProblemSpec ferry_problem(Rng &rng, std::size_t k) {
    std::size_t places = 3 + k % 2;
    std::size_t cars = 2;
    std::string objects;
    std::string init = "(empty-ferry) ";
    for (std::size_t i = 0; i < places; ++i) {
        objects += "l" + std::to_string(i) + " ";
        init += "(place l" + std::to_string(i) + ") ";
        for (std::size_t j = 0; j < places; ++j)
            if (i != j)
                init += "(not-eq l" + std::to_string(i) + " l" + std::to_string(j) + ") ";
    }
    init += "(at-ferry l" + std::to_string(pick(rng, places)) + ")";
    std::string goal, other;
    for (std::size_t c = 0; c < cars; ++c) {
        std::string car = "c" + std::to_string(c);
        objects += car + " ";
        std::size_t from = pick(rng, places), to, alt;
        do {
            to = pick(rng, places);
        } while (to == from);
        do {
            alt = pick(rng, places);
        } while (alt == to);
        init += " (car " + car + ") (at " + car + " l" + std::to_string(from) + ")";
        goal += "(at " + car + " l" + std::to_string(to) + ") ";
        other += "(at " + car + " l" + std::to_string(alt) + ") ";
    }
    std::string name = "ferry-g" + std::to_string(k);
    return {name, problem_text(name, "ferry", objects, init, goal),
            problem_text(name + "-other", "ferry", objects, init, other)};
}

std::vector<ActionId> applicable_actions(const PlanningInstance &inst, const State &s) {
    std::vector<ActionId> out;
    for (std::size_t a = 0; a < inst.num_actions(); ++a)
        if (applicable(s, inst.actions[a]))
            out.push_back(static_cast<ActionId>(a));
    return out;
}

State run(const PlanningInstance &inst, const State &start, const Plan &plan) {
    State s = start;
    for (ActionId a : plan)
        apply_effects(s, inst.actions[a]);
    return s;
}

// Optimal continuation from `s`; empty optional when none within the bound.
std::optional<Plan> replan(const PlanningInstance &inst, const State &s, std::size_t bound,
                           Rng &rng) {
    SearchLimits limits;
    limits.max_plans = 64;
    auto res = bfs_optimal_plans_from(inst, s, inst.goal, bound, limits);
    if (!res.length || res.plans.empty())
        return std::nullopt;
    return res.plans[pick(rng, res.plans.size())];
}

// Prefix of an optimal plan, then `detours` off-plan actions, then an optimal
// continuation.
std::optional<Plan> detour_trace(const PlanningInstance &inst, const Plan &optimal,
                                 std::size_t detours, std::size_t bound, Rng &rng) {
    std::size_t cut = pick(rng, optimal.size() + 1);
    if (cut == optimal.size() && cut > 0)
        --cut;
    Plan trace(optimal.begin(), optimal.begin() + static_cast<std::ptrdiff_t>(cut));
    State s = run(inst, inst.initial_state(), trace);
    for (std::size_t d = 0; d < detours; ++d) {
        // Only actions that move the agent further from the goal count as
        // detours.
        auto here = optimal_plan_length(inst, s, inst.goal, bound);
        if (!here)
            return std::nullopt;
        std::vector<ActionId> options;
        for (ActionId a : applicable_actions(inst, s)) {
            State next = s;
            apply_effects(next, inst.actions[a]);
            auto there = optimal_plan_length(inst, next, inst.goal, bound);
            if (!there || *there > *here)
                options.push_back(a);
        }
        if (options.empty())
            return std::nullopt;
        ActionId a = options[pick(rng, options.size())];
        trace.push_back(a);
        apply_effects(s, inst.actions[a]);
    }
    auto rest = replan(inst, s, bound, rng);
    if (!rest)
        return std::nullopt;
    trace.insert(trace.end(), rest->begin(), rest->end());
    return trace;
}

std::string join_indices(const std::vector<std::size_t> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

std::string format_theta(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", theta);
    return buf;
}

}  // namespace

GeneratedSuite generate_suite(const std::string &out_dir, const GenerateOptions &options) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    Rng rng(options.seed);
    GeneratedSuite suite;
    std::ostringstream manifest;
    manifest << "# generated suite, seed " << options.seed << "\n\n";

    struct DomainGen {
        std::string name;
        std::string text;
        ProblemSpec (*make)(Rng &, std::size_t);
    };
    std::vector<DomainGen> domains = {{"logistics", logistics_domain_text(), logistics_problem},
                                      {"grid", grid_domain_text(), grid_problem},
                                      {"ferry", ferry_domain_text(), ferry_problem}};

    for (const auto &dom : domains) {
        std::string domain_file = dom.name + "-domain.pddl";
        write_file((fs::path(out_dir) / domain_file).string(), dom.text);
        std::size_t made = 0;
        for (std::size_t attempt = 0; made < options.problems_per_domain && attempt < 50;
             ++attempt) {
            ProblemSpec spec = dom.make(rng, attempt);
            PlanningInstance inst = load_instance(dom.text, spec.text);
            SearchLimits limits;
            limits.max_plans = options.max_plans;
            auto optimal = bfs_optimal_plans(inst, options.depth_bound, limits);
            if (!optimal.length || *optimal.length < 2)
                continue;
            PlanningInstance other = load_instance(dom.text, spec.other_goal);
            auto other_plans = bfs_optimal_plans(other, options.depth_bound, limits);
            if (!other_plans.length || *other_plans.length == 0)
                continue;

            struct Trace {
                std::string kind;
                Plan steps;
            };
            std::vector<Trace> traces;
            traces.push_back({"optimal", optimal.plans[pick(rng, optimal.plans.size())]});
            const Plan &base = traces.front().steps;
            if (auto t = detour_trace(inst, base, 1, options.depth_bound, rng))
                traces.push_back({"detour1", *t});
            if (auto t = detour_trace(inst, base, 2, options.depth_bound, rng))
                traces.push_back({"detour2", *t});
            // Follow the plan for the other goal; actions are looked up by name
            // since both tasks ground to the same action set.
            Plan elsewhere;
            for (ActionId a : other_plans.plans[pick(rng, other_plans.plans.size())])
                elsewhere.push_back(*inst.find_action(other.actions[a].name));
            traces.push_back({"elsewhere", elsewhere});

            std::string problem_file = spec.name + ".pddl";
            write_file((fs::path(out_dir) / problem_file).string(), spec.text);
            ++made;

            for (const auto &trace : traces) {
                ObservationSequence obs{trace.steps};
                auto chosen = select_consistent_plan(inst, inst.initial_state(), obs,
                                                     optimal.plans);
                auto contributing = contributing_actions(inst, obs, optimal.plans[*chosen]);
                auto labels = non_contributing_indices(obs.size(), contributing);

                std::string id = spec.name + "-" + trace.kind;
                std::string obs_file = id + ".obs";
                write_file((fs::path(out_dir) / obs_file).string(),
                           format_observations(obs, inst));
                if (trace.kind != "elsewhere") {
                    manifest << "case: " << id << "\ngroup: " << dom.name
                             << "\ntask: optimality\ndomain: " << domain_file
                             << "\nproblem: " << problem_file << "\nobservations: " << obs_file
                             << "\nannotation: " << join_indices(labels) << "\n\n";
                    ++suite.optimality_cases;
                }
                // The antecedent is some fact that holds initially.
                std::string antecedent = inst.facts[inst.init.front()];
                std::string consequent;
                for (FactId g : inst.goal)
                    consequent += inst.facts[g] + " ";
                for (double theta : options.thresholds) {
                    std::string cid = id + "-t" + format_theta(theta);
                    std::string commitment_file = cid + ".commitment";
                    write_file((fs::path(out_dir) / commitment_file).string(),
                               "(commitment :debtor agent :creditor observer :antecedent (" +
                                   antecedent + ") :consequent (" + consequent +
                                   ") :threshold " + format_theta(theta) + ")\n");
                    bool abandoned = static_cast<double>(labels.size()) >
                                     theta * static_cast<double>(obs.size());
                    manifest << "case: " << cid << "\ngroup: " << dom.name
                             << "\ntask: abandonment\ndomain: " << domain_file
                             << "\nproblem: " << problem_file << "\nobservations: " << obs_file
                             << "\ncommitment: " << commitment_file
                             << "\nabandoned: " << (abandoned ? "true" : "false") << "\n\n";
                    ++suite.abandonment_cases;
                }
            }
        }
        if (made < options.problems_per_domain)
            throw Error("could not generate enough solvable " + dom.name + " problems");
    }
    suite.cases = suite.optimality_cases + suite.abandonment_cases;
    suite.manifest_path = (fs::path(out_dir) / "manifest.txt").string();
    write_file(suite.manifest_path, manifest.str());
    return suite;
}

}  // namespace optmon
