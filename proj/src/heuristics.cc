#include "optmon/heuristics.h"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>

namespace optmon {

std::string cost_to_string(Cost c) {
    return is_infinite(c) ? std::string("inf") : std::to_string(c);
}

namespace {

constexpr std::array<HeuristicId, 8> kAll = {
    HeuristicId::hmax,   HeuristicId::hsum, HeuristicId::hadjsum,  HeuristicId::hadjsum2,
    HeuristicId::hadjsum2m, HeuristicId::hcombo, HeuristicId::hff, HeuristicId::setlevel};

constexpr std::array<std::string_view, 8> kNames = {
    "hmax", "hsum", "hadjsum", "hadjsum2", "hadjsum2m", "hcombo", "hff", "setlevel"};

Cost add_costs(Cost a, Cost b) {
    if (is_infinite(a) || is_infinite(b))
        return kInfinity;
    return a + b;
}

// Generalised Dijkstra over the relaxed task. With additive=false this is
// h_max (and, under unit costs, the planning-graph level of each fact).
std::vector<Cost> propagate(const PlanningInstance &instance, const State &state, bool additive,
                            std::vector<Cost> *action_cost) {
    const std::size_t n = instance.num_facts();
    std::vector<Cost> cost(n, kInfinity);
    std::vector<std::size_t> unsatisfied(instance.num_actions());
    std::vector<Cost> acc(instance.num_actions(), 0);
    if (action_cost)
        action_cost->assign(instance.num_actions(), kInfinity);

    using Entry = std::pair<Cost, FactId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    auto reach_action = [&](std::size_t a) {
        Cost c = acc[a] + 1;
        if (action_cost)
            (*action_cost)[a] = acc[a];
        for (FactId g : instance.actions[a].add) {
            if (c < cost[g]) {
                cost[g] = c;
                queue.emplace(c, g);
            }
        }
    };
    for (FactId f : state.facts()) {
        cost[f] = 0;
        queue.emplace(0, f);
    }
    for (std::size_t a = 0; a < instance.num_actions(); ++a) {
        unsatisfied[a] = instance.actions[a].pre.size();
        if (unsatisfied[a] == 0)
            reach_action(a);
    }
    while (!queue.empty()) {
        auto [c, f] = queue.top();
        queue.pop();
        if (c > cost[f])
            continue;
        for (ActionId a : instance.consumers(f)) {
            acc[a] = additive ? acc[a] + c : std::max(acc[a], c);
            if (--unsatisfied[a] == 0)
                reach_action(static_cast<std::size_t>(a));
        }
    }
    return cost;
}

}  // namespace

std::optional<HeuristicId> parse_heuristic(std::string_view name) {
    std::string lower;
    for (char c : name)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == lower)
            return kAll[i];
    return std::nullopt;
}

std::string_view heuristic_name(HeuristicId id) {
    return kNames[static_cast<std::size_t>(id)];
}

const std::array<HeuristicId, 8> &all_heuristics() {
    return kAll;
}

RelaxedGraph build_relaxed_graph(const PlanningInstance &instance, const State &state) {
    RelaxedGraph graph;
    graph.fact_level = propagate(instance, state, false, &graph.action_level);
    graph.best_supporter.assign(instance.num_facts(), -1);
    for (std::size_t f = 0; f < instance.num_facts(); ++f) {
        if (graph.fact_level[f] == 0 || is_infinite(graph.fact_level[f]))
            continue;
        ActionId best = -1;
        for (ActionId a : instance.achievers(static_cast<FactId>(f))) {
            if (is_infinite(graph.action_level[a]))
                continue;
            if (best < 0 || graph.action_level[a] < graph.action_level[best] ||
                (graph.action_level[a] == graph.action_level[best] &&
                 instance.actions[a].name < instance.actions[best].name))
                best = a;
        }
        graph.best_supporter[f] = best;
    }
    return graph;
}

Cost h_max(const RelaxedGraph &graph, const FactSet &goal) {
    Cost h = 0;
    for (FactId g : goal)
        h = std::max(h, graph.fact_level[g]);
    return h;
}

Cost h_max(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    return h_max(build_relaxed_graph(instance, state), goal);
}

std::vector<Cost> additive_costs(const PlanningInstance &instance, const State &state) {
    return propagate(instance, state, true, nullptr);
}

Cost h_sum(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    auto cost = additive_costs(instance, state);
    Cost h = 0;
    for (FactId g : goal)
        h = add_costs(h, cost[g]);
    return h;
}

std::optional<std::vector<ActionId>> relaxed_plan(const PlanningInstance &instance,
                                                  const RelaxedGraph &graph,
                                                  const FactSet &goal) {
    std::set<ActionId> chosen;
    std::vector<bool> visited(instance.num_facts(), false);
    std::vector<FactId> open(goal.begin(), goal.end());
    while (!open.empty()) {
        FactId f = open.back();
        open.pop_back();
        if (visited[f])
            continue;
        visited[f] = true;
        if (graph.fact_level[f] == 0)
            continue;
        if (is_infinite(graph.fact_level[f]))
            return std::nullopt;
        ActionId a = graph.best_supporter[f];
        if (chosen.insert(a).second)
            for (FactId p : instance.actions[a].pre)
                open.push_back(p);
    }
    std::vector<ActionId> plan(chosen.begin(), chosen.end());
    std::sort(plan.begin(), plan.end(), [&](ActionId x, ActionId y) {
        if (graph.action_level[x] != graph.action_level[y])
            return graph.action_level[x] < graph.action_level[y];
        return instance.actions[x].name < instance.actions[y].name;
    });
    return plan;
}

Cost h_ff(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    auto plan = relaxed_plan(instance, build_relaxed_graph(instance, state), goal);
    return plan ? static_cast<Cost>(plan->size()) : kInfinity;
}

MutexGraph::MutexGraph(const PlanningInstance &instance, const State &state)
    : n_(instance.num_facts()) {
    const auto &actions = instance.actions;
    std::vector<bool> present(n_, false);
    for (FactId f : state.facts())
        present[f] = true;
    std::vector<std::vector<bool>> mutex(n_, std::vector<bool>(n_, false));
    present_.push_back(present);
    mutex_.push_back(mutex);

    auto touches = [](const FactSet &del, const FactSet &other) {
        for (FactId f : del)
            if (std::binary_search(other.begin(), other.end(), f))
                return true;
        return false;
    };

    while (true) {
        const auto &cur_present = present_.back();
        const auto &cur_mutex = mutex_.back();
        auto pre_ok = [&](const FactSet &pre) {
            for (std::size_t i = 0; i < pre.size(); ++i) {
                if (!cur_present[pre[i]])
                    return false;
                for (std::size_t j = i + 1; j < pre.size(); ++j)
                    if (cur_mutex[pre[i]][pre[j]])
                        return false;
            }
            return true;
        };
        std::vector<bool> in_level(actions.size(), false);
        for (std::size_t a = 0; a < actions.size(); ++a)
            in_level[a] = pre_ok(actions[a].pre);

        // Negative ids stand for the noop of fact (-id - 1).
        auto pre_of = [&](int a, FactSet &scratch) -> const FactSet & {
            if (a >= 0)
                return actions[a].pre;
            scratch = {-a - 1};
            return scratch;
        };
        auto add_of = [&](int a, FactSet &scratch) -> const FactSet & {
            if (a >= 0)
                return actions[a].add;
            scratch = {-a - 1};
            return scratch;
        };
        static const FactSet kEmpty;
        auto del_of = [&](int a) -> const FactSet & { return a >= 0 ? actions[a].del : kEmpty; };
        auto actions_mutex = [&](int a, int b) {
            if (a == b)
                return false;
            FactSet s1, s2, s3, s4;
            const FactSet &pa = pre_of(a, s1), &pb = pre_of(b, s2);
            const FactSet &ea = add_of(a, s3), &eb = add_of(b, s4);
            if (touches(del_of(a), pb) || touches(del_of(a), eb) || touches(del_of(b), pa) ||
                touches(del_of(b), ea))
                return true;
            for (FactId p : pa)
                for (FactId q : pb)
                    if (p != q && cur_mutex[p][q])
                        return true;
            return false;
        };

        std::vector<std::vector<int>> supporters(n_);
        for (std::size_t f = 0; f < n_; ++f)
            if (cur_present[f])
                supporters[f].push_back(-static_cast<int>(f) - 1);
        for (std::size_t a = 0; a < actions.size(); ++a)
            if (in_level[a])
                for (FactId f : actions[a].add)
                    supporters[f].push_back(static_cast<int>(a));

        std::vector<bool> next_present(n_, false);
        for (std::size_t f = 0; f < n_; ++f)
            next_present[f] = !supporters[f].empty();
        std::vector<std::vector<bool>> next_mutex(n_, std::vector<bool>(n_, false));
        for (std::size_t p = 0; p < n_; ++p) {
            if (!next_present[p])
                continue;
            for (std::size_t q = p + 1; q < n_; ++q) {
                if (!next_present[q])
                    continue;
                // Mutexes only disappear as levels grow.
                if (cur_present[p] && cur_present[q] && !cur_mutex[p][q])
                    continue;
                bool all_mutex = true;
                for (int a : supporters[p]) {
                    for (int b : supporters[q]) {
                        if (!actions_mutex(a, b)) {
                            all_mutex = false;
                            break;
                        }
                    }
                    if (!all_mutex)
                        break;
                }
                next_mutex[p][q] = next_mutex[q][p] = all_mutex;
            }
        }
        bool leveled = next_present == cur_present && next_mutex == cur_mutex;
        if (leveled)
            break;
        present_.push_back(std::move(next_present));
        mutex_.push_back(std::move(next_mutex));
    }
}

bool MutexGraph::present(std::size_t level, FactId f) const {
    level = std::min(level, present_.size() - 1);
    return present_[level][f];
}

bool MutexGraph::mutex(std::size_t level, FactId p, FactId q) const {
    level = std::min(level, mutex_.size() - 1);
    return mutex_[level][p][q];
}

Cost MutexGraph::set_level(const FactSet &goal) const {
    for (std::size_t level = 0; level < present_.size(); ++level) {
        bool ok = true;
        for (std::size_t i = 0; i < goal.size() && ok; ++i) {
            if (!present_[level][goal[i]])
                ok = false;
            for (std::size_t j = i + 1; j < goal.size() && ok; ++j)
                if (mutex_[level][goal[i]][goal[j]])
                    ok = false;
        }
        if (ok)
            return static_cast<Cost>(level);
    }
    return kInfinity;
}

Cost set_level(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    if (state.contains_all(goal))
        return 0;
    return MutexGraph(instance, state).set_level(goal);
}

namespace {

// set_level(G) - max_g fact_level(g); infinite when either side is.
Cost interaction_term(const MutexGraph &mg, const RelaxedGraph &rg, const FactSet &goal) {
    Cost sl = mg.set_level(goal);
    Cost hm = h_max(rg, goal);
    if (is_infinite(sl) || is_infinite(hm))
        return kInfinity;
    return sl - hm;
}

Cost relaxed_plan_length(const PlanningInstance &instance, const RelaxedGraph &rg,
                         const FactSet &goal) {
    auto plan = relaxed_plan(instance, rg, goal);
    return plan ? static_cast<Cost>(plan->size()) : kInfinity;
}

}  // namespace

Cost h_adjsum(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    if (state.contains_all(goal))
        return 0;
    MutexGraph mg(instance, state);
    auto rg = build_relaxed_graph(instance, state);
    return add_costs(h_sum(instance, state, goal), interaction_term(mg, rg, goal));
}

Cost h_adjsum2(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    if (state.contains_all(goal))
        return 0;
    MutexGraph mg(instance, state);
    auto rg = build_relaxed_graph(instance, state);
    return add_costs(relaxed_plan_length(instance, rg, goal), interaction_term(mg, rg, goal));
}

Cost h_adjsum2m(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    if (state.contains_all(goal))
        return 0;
    MutexGraph mg(instance, state);
    auto rg = build_relaxed_graph(instance, state);
    Cost sl = mg.set_level(goal);
    Cost single = 0;
    for (FactId g : goal)
        single = std::max(single, mg.set_level({g}));
    Cost term = (is_infinite(sl) || is_infinite(single)) ? kInfinity : sl - single;
    return add_costs(relaxed_plan_length(instance, rg, goal), term);
}

Cost h_combo(const PlanningInstance &instance, const State &state, const FactSet &goal) {
    if (state.contains_all(goal))
        return 0;
    MutexGraph mg(instance, state);
    auto rg = build_relaxed_graph(instance, state);
    Cost adj = add_costs(h_sum(instance, state, goal), interaction_term(mg, rg, goal));
    return add_costs(adj, mg.set_level(goal));
}

Cost estimate_goal_distance(const PlanningInstance &instance, const State &state,
                            const FactSet &goal, HeuristicId id) {
    switch (id) {
    case HeuristicId::hmax:
        return h_max(instance, state, goal);
    case HeuristicId::hsum:
        return h_sum(instance, state, goal);
    case HeuristicId::hadjsum:
        return h_adjsum(instance, state, goal);
    case HeuristicId::hadjsum2:
        return h_adjsum2(instance, state, goal);
    case HeuristicId::hadjsum2m:
        return h_adjsum2m(instance, state, goal);
    case HeuristicId::hcombo:
        return h_combo(instance, state, goal);
    case HeuristicId::hff:
        return h_ff(instance, state, goal);
    case HeuristicId::setlevel:
        return set_level(instance, state, goal);
    }
    return kInfinity;
}

}  // namespace optmon
