#pragma once

#include "optmon/task.h"

#include <string>

namespace optmon {

struct FactPartitions {
    FactSet strictly_activating;  // in init, never added or deleted, required somewhere
    FactSet unstable_activating;  // in init, never added, required and deleted somewhere
    FactSet strictly_terminal;    // added somewhere, never required or deleted
};

FactPartitions partition_facts(const PlanningInstance &instance);
// Same scan with an explicit initial state (used when the start differs from init).
FactPartitions partition_facts_from(const PlanningInstance &instance, const State &start);

std::string format_partitions(const PlanningInstance &instance, const FactPartitions &parts);

}  // namespace optmon
