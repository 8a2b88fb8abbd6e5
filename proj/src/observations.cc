#include "optmon/observations.h"

#include "optmon/errors.h"

#include <algorithm>
#include <limits>

namespace optmon {

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string_view trim(std::string_view line) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

}  // namespace

std::string nearest_action_name(std::string_view text, const PlanningInstance &instance) {
    std::string wanted = canonical_name(text);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::string best_name;
    for (const auto &a : instance.actions) {
        std::size_t d = edit_distance(wanted, a.name);
        if (d < best) {
            best = d;
            best_name = a.name;
        }
    }
    return best_name;
}

ObservationSequence parse_observations(std::string_view text, const PlanningInstance &instance) {
    ObservationSequence obs;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = trim(text.substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        if (line.empty() || line.front() == ';')
            continue;
        if (line.front() != '(' || line.back() != ')')
            throw ObservationError("expected a parenthesised action, got '" +
                                       std::string(line) + "'",
                                   line_no, nearest_action_name(line, instance));
        auto id = instance.find_action(line);
        if (!id)
            throw ObservationError("unknown action " + std::string(line), line_no,
                                   nearest_action_name(line, instance));
        obs.steps.push_back(*id);
    }
    return obs;
}

std::string format_observations(const ObservationSequence &obs, const PlanningInstance &instance) {
    std::string out;
    for (ActionId a : obs.steps)
        out += instance.actions[a].name + "\n";
    return out;
}

}  // namespace optmon
