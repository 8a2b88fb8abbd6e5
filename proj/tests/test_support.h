#pragma once

#include "optmon/grounding.h"
#include "optmon/io.h"
#include "optmon/observations.h"
#include "optmon/planning.h"
#include "optmon/task.h"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using namespace optmon;

inline std::string fixture(const std::string &name) { return std::string(OPTMON_FIXTURES) + "/" + name; }

inline PlanningInstance load_fixture(const std::string &domain, const std::string &problem) {
    return load_instance_files(fixture(domain), fixture(problem));
}

inline ObservationSequence load_obs(const PlanningInstance &inst, const std::string &name) {
    return parse_observations(read_file(fixture(name)), inst);
}

inline FactId fact(const PlanningInstance &inst, const std::string &text) {
    auto f = inst.find_fact(text);
    if (!f)
        throw std::runtime_error("no fact " + text);
    return *f;
}

inline ActionId action(const PlanningInstance &inst, const std::string &text) {
    auto a = inst.find_action(text);
    if (!a)
        throw std::runtime_error("no action " + text);
    return *a;
}

inline FactSet facts(const PlanningInstance &inst, const std::vector<std::string> &texts) {
    FactSet out;
    for (const auto &t : texts)
        out.push_back(fact(inst, t));
    return make_fact_set(out);
}

// Random STRIPS task over facts "(p0)".."(pN)". Every action has 1-2
// preconditions, 1-2 adds and 0-2 deletes.
inline PlanningInstance random_instance(std::mt19937 &rng, int num_facts = 8, int num_actions = 10) {
    PlanningInstance inst;
    for (int i = 0; i < num_facts; ++i)
        inst.facts.push_back("(p" + std::to_string(i) + ")");
    std::sort(inst.facts.begin(), inst.facts.end());
    std::uniform_int_distribution<int> any(0, num_facts - 1);
    auto sample = [&](int lo, int hi) {
        std::vector<FactId> v;
        int n = std::uniform_int_distribution<int>(lo, hi)(rng);
        for (int i = 0; i < n; ++i)
            v.push_back(any(rng));
        return make_fact_set(v);
    };
    for (int a = 0; a < num_actions; ++a) {
        GroundAction act;
        act.name = "(a" + std::to_string(a) + ")";
        act.pre = sample(1, 2);
        act.add = sample(1, 2);
        FactSet del = sample(0, 2);
        for (FactId f : del)
            if (!std::binary_search(act.add.begin(), act.add.end(), f))
                act.del.push_back(f);
        inst.actions.push_back(act);
    }
    std::sort(inst.actions.begin(), inst.actions.end(),
              [](const GroundAction &x, const GroundAction &y) { return x.name < y.name; });
    inst.init = sample(2, 3);
    inst.goal = sample(1, 3);
    inst.finalize();
    return inst;
}

// Plain set-based γ used by the oracles below.
using FactBag = std::set<FactId>;

inline std::optional<FactBag> oracle_progress(const FactBag &s, const GroundAction &a) {
    for (FactId p : a.pre)
        if (!s.count(p))
            return std::nullopt;
    FactBag next = s;
    for (FactId d : a.del)
        next.erase(d);
    for (FactId f : a.add)
        next.insert(f);
    return next;
}

inline bool oracle_holds(const FactBag &s, const FactSet &goal) {
    return std::all_of(goal.begin(), goal.end(), [&](FactId g) { return s.count(g) > 0; });
}

inline FactBag to_bag(const FactSet &v) { return FactBag(v.begin(), v.end()); }

// Exact goal distance by BFS; INT_MAX when unreachable. Also reports the
// number of reachable states.
inline int oracle_distance(const PlanningInstance &inst, const FactBag &start, const FactSet &goal,
                           std::size_t *reachable = nullptr) {
    std::map<FactBag, int> dist{{start, 0}};
    std::deque<FactBag> queue{start};
    int found = INT_MAX;
    while (!queue.empty()) {
        FactBag s = queue.front();
        queue.pop_front();
        if (found == INT_MAX && oracle_holds(s, goal))
            found = dist[s];
        for (const auto &a : inst.actions)
            if (auto n = oracle_progress(s, a); n && !dist.count(*n)) {
                dist[*n] = dist[s] + 1;
                queue.push_back(*n);
            }
    }
    if (reachable)
        *reachable = dist.size();
    return found;
}

// Bellman fixpoint for h_max (combine = max) or h_add (combine = sum).
inline int oracle_relaxed_cost(const PlanningInstance &inst, const FactBag &s, const FactSet &goal,
                               bool additive) {
    const int inf = INT_MAX;
    std::vector<long long> cost(inst.num_facts(), inf);
    for (FactId f : s)
        cost[f] = 0;
    auto combine = [&](const FactSet &set) -> long long {
        long long acc = 0;
        for (FactId f : set) {
            if (cost[f] >= inf)
                return inf;
            acc = additive ? acc + cost[f] : std::max(acc, cost[f]);
        }
        return acc;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &a : inst.actions) {
            long long c = combine(a.pre);
            if (c >= inf)
                continue;
            for (FactId f : a.add)
                if (c + 1 < cost[f]) {
                    cost[f] = c + 1;
                    changed = true;
                }
        }
    }
    long long g = combine(goal);
    return g >= inf ? INT_MAX : static_cast<int>(g);
}

// Calls visit(plan_states) for every executable action sequence of length
// up to `depth` that ends in a goal state; plan_states includes the start.
inline void enumerate_plans(const PlanningInstance &inst, const FactBag &start, const FactSet &goal,
                            int depth,
                            const std::function<void(const std::vector<FactBag> &)> &visit) {
    std::vector<FactBag> trail{start};
    std::function<void(int)> rec = [&](int left) {
        if (oracle_holds(trail.back(), goal))
            visit(trail);
        if (left == 0)
            return;
        for (const auto &a : inst.actions)
            if (auto n = oracle_progress(trail.back(), a)) {
                trail.push_back(*n);
                rec(left - 1);
                trail.pop_back();
            }
    };
    rec(depth);
}

// True when some plan of length <= depth reaches the goal without any state
// (start included) satisfying `marked`. Equivalent to enumerating every plan
// up to that length and checking each trajectory.
inline bool goal_avoiding(const PlanningInstance &inst, const FactBag &start, const FactSet &goal,
                          int depth, const std::function<bool(const FactBag &)> &marked) {
    if (marked(start))
        return false;
    std::map<FactBag, int> dist{{start, 0}};
    std::deque<FactBag> queue{start};
    while (!queue.empty()) {
        FactBag s = queue.front();
        queue.pop_front();
        if (oracle_holds(s, goal))
            return true;
        if (dist[s] == depth)
            continue;
        for (const auto &a : inst.actions)
            if (auto n = oracle_progress(s, a); n && !dist.count(*n) && !marked(*n)) {
                dist[*n] = dist[s] + 1;
                queue.push_back(*n);
            }
    }
    return false;
}

}  // namespace testing_support
