#pragma once

#include "optmon/task.h"

#include <string>
#include <string_view>
#include <vector>

namespace optmon {

struct ObservationSequence {
    std::vector<ActionId> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

// One parenthesised ground action per non-empty line; lines starting with ';'
// are comments. Matching is case-insensitive. Throws ObservationError with the
// 1-based line number and the closest action name.
ObservationSequence parse_observations(std::string_view text, const PlanningInstance &instance);

std::string format_observations(const ObservationSequence &obs, const PlanningInstance &instance);

// Closest action name by edit distance; empty when the instance has no actions.
std::string nearest_action_name(std::string_view text, const PlanningInstance &instance);

}  // namespace optmon
