#pragma once

#include "optmon/observations.h"
#include "optmon/task.h"

#include <cstddef>
#include <optional>
#include <vector>

namespace optmon {

using Plan = std::vector<ActionId>;

bool applicable(const State &state, const GroundAction &action);

// γ(s, a): (s ∪ add) \ del, or nullopt (⊥) when pre(a) ⊄ s.
std::optional<State> progress(const State &state, const GroundAction &action);

// Applies without checking the precondition.
void apply_effects(State &state, const GroundAction &action);

struct PlanValidation {
    bool valid = false;  // every step applicable and goal holds at the end
    bool goal_reached = false;
    std::optional<std::size_t> failed_index;
    State final_state;
};

PlanValidation validate_plan(const PlanningInstance &instance, const Plan &plan);
PlanValidation validate_plan_from(const PlanningInstance &instance, const State &start,
                                  const FactSet &goal, const Plan &plan);

struct SearchLimits {
    std::size_t max_states = 1'000'000;
    std::size_t max_plans = 100'000;
};

struct OptimalPlans {
    std::optional<std::size_t> length;  // L*, empty if no plan within the bound
    std::vector<Plan> plans;
    bool truncated = false;  // plan enumeration hit max_plans
    std::size_t expanded_states = 0;
};

// Layered BFS from `start` keeping every optimal predecessor of each state, so
// all shortest plans can be read back from the parent DAG. Throws
// ResourceLimitError when more than max_states states are generated.
OptimalPlans bfs_optimal_plans(const PlanningInstance &instance, std::size_t depth_bound,
                               const SearchLimits &limits = {});
OptimalPlans bfs_optimal_plans_from(const PlanningInstance &instance, const State &start,
                                    const FactSet &goal, std::size_t depth_bound,
                                    const SearchLimits &limits = {});

// Exact optimal plan length, nullopt when none exists within the bound.
std::optional<std::size_t> optimal_plan_length(const PlanningInstance &instance,
                                               const State &start, const FactSet &goal,
                                               std::size_t depth_bound,
                                               const SearchLimits &limits = {});

// Indices (into obs) of the contributing observations with respect to `plan`:
// keep o when it occurs in the plan, always advance the state by γ. The
// recursion stops at the first observation that is not applicable.
std::vector<std::size_t> contributing_actions(const PlanningInstance &instance,
                                              const ObservationSequence &obs, const Plan &plan);
std::vector<std::size_t> contributing_actions_from(const PlanningInstance &instance,
                                                   const State &start,
                                                   const ObservationSequence &obs,
                                                   const Plan &plan);

// Index of the first plan maximising the number of contributing observations.
std::optional<std::size_t> select_consistent_plan(const PlanningInstance &instance,
                                                  const State &start,
                                                  const ObservationSequence &obs,
                                                  const std::vector<Plan> &plans);

// Complement of the contributing indices.
std::vector<std::size_t> non_contributing_indices(std::size_t obs_size,
                                                  const std::vector<std::size_t> &contributing);

}  // namespace optmon
