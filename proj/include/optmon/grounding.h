#pragma once

#include "optmon/pddl.h"
#include "optmon/task.h"

#include <cstddef>
#include <string>

namespace optmon {

struct GroundingOptions {
    std::size_t max_actions = 2'000'000;
    // Also drop actions that are unreachable under the delete relaxation.
    bool prune_unreachable = false;
};

// Instantiates every operator over type-compatible objects. Instantiations
// whose static preconditions (predicates no operator adds or deletes) are
// false in the initial state are dropped.
PlanningInstance ground(const pddl::DomainAst &domain, const pddl::ProblemAst &problem,
                        const GroundingOptions &options = {});

// Convenience: parse both texts and ground.
PlanningInstance load_instance(const std::string &domain_text,
                               const std::string &problem_text,
                               const GroundingOptions &options = {});

PlanningInstance load_instance_files(const std::string &domain_path,
                                     const std::string &problem_path,
                                     const GroundingOptions &options = {});

}  // namespace optmon
