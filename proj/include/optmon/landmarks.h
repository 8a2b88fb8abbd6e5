#pragma once

#include "optmon/task.h"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace optmon {

enum class LandmarkKind { conjunctive, disjunctive };

struct Landmark {
    LandmarkKind kind = LandmarkKind::conjunctive;
    FactSet facts;

    friend bool operator==(const Landmark &, const Landmark &) = default;
    friend auto operator<=>(const Landmark &, const Landmark &) = default;
};

struct LandmarkGraph {
    std::vector<Landmark> landmarks;
    // (earlier, later) pairs of landmark indices.
    std::vector<std::pair<std::size_t, std::size_t>> orderings;

    std::optional<std::size_t> find(const Landmark &lm) const;
};

// Backchains from the goal over the relaxed planning graph. For a fact at
// level l, the achievers applicable at level l-1 give a conjunctive candidate
// (their shared preconditions) and disjunctive candidates (per-predicate
// groups of the remaining preconditions, 2 to 4 facts). Facts that are true
// initially and never change are left out of candidates.
LandmarkGraph extract_landmarks(const PlanningInstance &instance);
LandmarkGraph extract_landmarks_for(const PlanningInstance &instance, const State &start,
                                    const FactSet &goal);

// Sufficient test: every fact of a conjunctive landmark (or, for a
// disjunctive one, the union of its facts) is either in start/goal or
// becomes relaxed-unreachable once its achievers are removed.
bool verify_landmark(const PlanningInstance &instance, const Landmark &candidate);
bool verify_landmark_for(const PlanningInstance &instance, const State &start,
                         const FactSet &goal, const Landmark &candidate);

// Relaxed reachability of `goal` from `start` with the listed actions removed.
bool relaxed_solvable(const PlanningInstance &instance, const State &start, const FactSet &goal,
                      const std::vector<bool> &disabled);

std::string format_landmark(const PlanningInstance &instance, const Landmark &lm);
std::string format_landmarks(const PlanningInstance &instance, const LandmarkGraph &graph);
std::string format_orderings_dot(const PlanningInstance &instance, const LandmarkGraph &graph);

}  // namespace optmon
