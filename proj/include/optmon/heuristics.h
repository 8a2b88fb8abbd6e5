#pragma once

#include "optmon/task.h"

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optmon {

using Cost = int;
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max();

inline bool is_infinite(Cost c) { return c == kInfinity; }
std::string cost_to_string(Cost c);

enum class HeuristicId { hmax, hsum, hadjsum, hadjsum2, hadjsum2m, hcombo, hff, setlevel };

std::optional<HeuristicId> parse_heuristic(std::string_view name);
std::string_view heuristic_name(HeuristicId id);
const std::array<HeuristicId, 8> &all_heuristics();

// Delete-relaxed reachability from one state under unit costs.
struct RelaxedGraph {
    std::vector<Cost> fact_level;    // kInfinity when unreachable
    std::vector<Cost> action_level;  // kInfinity when never applicable
    std::vector<ActionId> best_supporter;  // -1 for seed facts and unreachable facts
};

RelaxedGraph build_relaxed_graph(const PlanningInstance &instance, const State &state);

// h_max(s, G) = max over g of the cheapest relaxed cost of g.
Cost h_max(const PlanningInstance &instance, const State &state, const FactSet &goal);
Cost h_max(const RelaxedGraph &graph, const FactSet &goal);

// Additive cost: sum over goals, each computed with sums over preconditions.
Cost h_sum(const PlanningInstance &instance, const State &state, const FactSet &goal);
std::vector<Cost> additive_costs(const PlanningInstance &instance, const State &state);

// Actions of the relaxed plan, ordered by action level then name. Empty when
// the goal already holds; nullopt when it is relaxed-unreachable.
std::optional<std::vector<ActionId>> relaxed_plan(const PlanningInstance &instance,
                                                  const RelaxedGraph &graph,
                                                  const FactSet &goal);
Cost h_ff(const PlanningInstance &instance, const State &state, const FactSet &goal);

// Planning graph with binary mutexes (noops, interference, inconsistent
// effects, competing needs), expanded until it levels off.
class MutexGraph {
public:
    MutexGraph(const PlanningInstance &instance, const State &state);

    // First level at which every goal fact is present and no two are mutex.
    Cost set_level(const FactSet &goal) const;
    std::size_t num_levels() const { return present_.size(); }
    bool present(std::size_t level, FactId f) const;
    bool mutex(std::size_t level, FactId p, FactId q) const;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<bool>> present_;
    // mutex_[level][p] is a bit row over facts.
    std::vector<std::vector<std::vector<bool>>> mutex_;
};

Cost set_level(const PlanningInstance &instance, const State &state, const FactSet &goal);

Cost h_adjsum(const PlanningInstance &instance, const State &state, const FactSet &goal);
Cost h_adjsum2(const PlanningInstance &instance, const State &state, const FactSet &goal);
Cost h_adjsum2m(const PlanningInstance &instance, const State &state, const FactSet &goal);
Cost h_combo(const PlanningInstance &instance, const State &state, const FactSet &goal);

Cost estimate_goal_distance(const PlanningInstance &instance, const State &state,
                            const FactSet &goal, HeuristicId id);

}  // namespace optmon
