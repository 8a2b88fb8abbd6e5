#include "optmon/partitions.h"

namespace optmon {

FactPartitions partition_facts_from(const PlanningInstance &instance, const State &start) {
    FactPartitions parts;
    for (std::size_t i = 0; i < instance.num_facts(); ++i) {
        auto f = static_cast<FactId>(i);
        bool added = !instance.achievers(f).empty();
        bool required = !instance.consumers(f).empty();
        bool deleted = !instance.deleters(f).empty();
        if (start.contains(f) && !added && !deleted && required)
            parts.strictly_activating.push_back(f);
        else if (start.contains(f) && !added && required && deleted)
            parts.unstable_activating.push_back(f);
        else if (added && !required && !deleted)
            parts.strictly_terminal.push_back(f);
    }
    return parts;
}

FactPartitions partition_facts(const PlanningInstance &instance) {
    return partition_facts_from(instance, instance.initial_state());
}

std::string format_partitions(const PlanningInstance &instance, const FactPartitions &parts) {
    std::string out;
    auto section = [&](const char *title, const FactSet &set) {
        out += title;
        out += " (" + std::to_string(set.size()) + ")\n";
        for (FactId f : set)
            out += "  " + instance.facts[f] + "\n";
    };
    section("strictly activating", parts.strictly_activating);
    section("unstable activating", parts.unstable_activating);
    section("strictly terminal", parts.strictly_terminal);
    return out;
}

}  // namespace optmon
