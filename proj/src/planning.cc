#include "optmon/planning.h"

#include "optmon/errors.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace optmon {

bool applicable(const State &state, const GroundAction &action) {
    return state.contains_all(action.pre);
}

void apply_effects(State &state, const GroundAction &action) {
    for (FactId f : action.del)
        state.erase(f);
    for (FactId f : action.add)
        state.insert(f);
}

std::optional<State> progress(const State &state, const GroundAction &action) {
    if (!applicable(state, action))
        return std::nullopt;
    State next = state;
    apply_effects(next, action);
    return next;
}

PlanValidation validate_plan_from(const PlanningInstance &instance, const State &start,
                                  const FactSet &goal, const Plan &plan) {
    PlanValidation result;
    State s = start;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const auto &a = instance.actions[plan[i]];
        if (!applicable(s, a)) {
            result.failed_index = i;
            result.final_state = s;
            return result;
        }
        apply_effects(s, a);
    }
    result.goal_reached = s.contains_all(goal);
    result.valid = result.goal_reached;
    result.final_state = std::move(s);
    return result;
}

PlanValidation validate_plan(const PlanningInstance &instance, const Plan &plan) {
    return validate_plan_from(instance, instance.initial_state(), instance.goal, plan);
}

namespace {

struct Node {
    State state;
    std::size_t depth;
    std::vector<std::pair<std::size_t, ActionId>> parents;
};

void collect_paths(const std::vector<Node> &nodes, std::size_t node, Plan &suffix,
                   std::vector<Plan> &out, std::size_t max_plans, bool &truncated) {
    if (out.size() >= max_plans) {
        truncated = true;
        return;
    }
    if (nodes[node].parents.empty()) {
        out.emplace_back(suffix.rbegin(), suffix.rend());
        return;
    }
    for (const auto &[parent, action] : nodes[node].parents) {
        suffix.push_back(action);
        collect_paths(nodes, parent, suffix, out, max_plans, truncated);
        suffix.pop_back();
        if (truncated)
            return;
    }
}

}  // namespace

OptimalPlans bfs_optimal_plans_from(const PlanningInstance &instance, const State &start,
                                    const FactSet &goal, std::size_t depth_bound,
                                    const SearchLimits &limits) {
    OptimalPlans result;
    std::vector<Node> nodes;
    std::unordered_map<State, std::size_t, StateHash> index;
    nodes.push_back(Node{start, 0, {}});
    index.emplace(start, 0);

    std::vector<std::size_t> layer = {0};
    std::vector<std::size_t> goals;
    for (std::size_t depth = 0;; ++depth) {
        for (std::size_t n : layer)
            if (nodes[n].state.contains_all(goal))
                goals.push_back(n);
        if (!goals.empty()) {
            result.length = depth;
            break;
        }
        if (depth >= depth_bound || layer.empty())
            break;
        std::vector<std::size_t> next;
        for (std::size_t n : layer) {
            ++result.expanded_states;
            for (std::size_t a = 0; a < instance.actions.size(); ++a) {
                const auto &action = instance.actions[a];
                if (!applicable(nodes[n].state, action))
                    continue;
                State succ = nodes[n].state;
                apply_effects(succ, action);
                auto it = index.find(succ);
                if (it == index.end()) {
                    if (nodes.size() >= limits.max_states)
                        throw ResourceLimitError("search exceeded " +
                                                 std::to_string(limits.max_states) + " states");
                    index.emplace(succ, nodes.size());
                    next.push_back(nodes.size());
                    nodes.push_back(Node{std::move(succ), depth + 1,
                                         {{n, static_cast<ActionId>(a)}}});
                } else if (nodes[it->second].depth == depth + 1) {
                    nodes[it->second].parents.emplace_back(n, static_cast<ActionId>(a));
                }
            }
        }
        layer = std::move(next);
    }
    Plan suffix;
    for (std::size_t g : goals) {
        collect_paths(nodes, g, suffix, result.plans, limits.max_plans, result.truncated);
        if (result.truncated)
            break;
    }
    std::sort(result.plans.begin(), result.plans.end());
    return result;
}

OptimalPlans bfs_optimal_plans(const PlanningInstance &instance, std::size_t depth_bound,
                               const SearchLimits &limits) {
    return bfs_optimal_plans_from(instance, instance.initial_state(), instance.goal, depth_bound,
                                  limits);
}

std::optional<std::size_t> optimal_plan_length(const PlanningInstance &instance,
                                               const State &start, const FactSet &goal,
                                               std::size_t depth_bound,
                                               const SearchLimits &limits) {
    if (start.contains_all(goal))
        return 0;
    std::unordered_set<State, StateHash> seen = {start};
    std::vector<State> layer = {start};
    for (std::size_t depth = 1; depth <= depth_bound && !layer.empty(); ++depth) {
        std::vector<State> next;
        for (const auto &s : layer) {
            for (const auto &action : instance.actions) {
                if (!applicable(s, action))
                    continue;
                State succ = s;
                apply_effects(succ, action);
                if (succ.contains_all(goal))
                    return depth;
                if (seen.insert(succ).second) {
                    if (seen.size() > limits.max_states)
                        throw ResourceLimitError("search exceeded " +
                                                 std::to_string(limits.max_states) + " states");
                    next.push_back(std::move(succ));
                }
            }
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

std::vector<std::size_t> contributing_actions_from(const PlanningInstance &instance,
                                                   const State &start,
                                                   const ObservationSequence &obs,
                                                   const Plan &plan) {
    std::unordered_set<ActionId> members(plan.begin(), plan.end());
    std::vector<std::size_t> kept;
    State s = start;
    for (std::size_t i = 0; i < obs.steps.size(); ++i) {
        const auto &a = instance.actions[obs.steps[i]];
        if (!applicable(s, a))
            break;
        if (members.count(obs.steps[i]))
            kept.push_back(i);
        apply_effects(s, a);
    }
    return kept;
}

std::vector<std::size_t> contributing_actions(const PlanningInstance &instance,
                                              const ObservationSequence &obs, const Plan &plan) {
    return contributing_actions_from(instance, instance.initial_state(), obs, plan);
}

std::optional<std::size_t> select_consistent_plan(const PlanningInstance &instance,
                                                  const State &start,
                                                  const ObservationSequence &obs,
                                                  const std::vector<Plan> &plans) {
    std::optional<std::size_t> best;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        std::size_t count = contributing_actions_from(instance, start, obs, plans[i]).size();
        if (!best || count > best_count) {
            best = i;
            best_count = count;
        }
    }
    return best;
}

std::vector<std::size_t> non_contributing_indices(std::size_t obs_size,
                                                  const std::vector<std::size_t> &contributing) {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < obs_size; ++i) {
        if (k < contributing.size() && contributing[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

}  // namespace optmon
