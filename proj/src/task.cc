#include "optmon/task.h"

#include <algorithm>
#include <bit>
#include <cctype>

namespace optmon {

State::State(std::size_t num_facts) : size_(num_facts), words_((num_facts + 63) / 64, 0) {}

State::State(std::size_t num_facts, const FactSet &facts) : State(num_facts) {
    for (FactId f : facts)
        insert(f);
}

bool State::contains_all(const FactSet &facts) const {
    for (FactId f : facts)
        if (!contains(f))
            return false;
    return true;
}

FactSet State::facts() const {
    FactSet out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            int bit = std::countr_zero(bits);
            out.push_back(static_cast<FactId>(w * 64 + bit));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t State::count() const {
    std::size_t n = 0;
    for (auto w : words_)
        n += std::popcount(w);
    return n;
}

std::size_t State::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

void PlanningInstance::finalize() {
    fact_index_.clear();
    action_index_.clear();
    for (std::size_t i = 0; i < facts.size(); ++i)
        fact_index_.emplace(facts[i], static_cast<FactId>(i));
    for (std::size_t i = 0; i < actions.size(); ++i)
        action_index_.emplace(actions[i].name, static_cast<ActionId>(i));
    achievers_.assign(facts.size(), {});
    consumers_.assign(facts.size(), {});
    deleters_.assign(facts.size(), {});
    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto id = static_cast<ActionId>(i);
        for (FactId f : actions[i].add)
            achievers_[f].push_back(id);
        for (FactId f : actions[i].pre)
            consumers_[f].push_back(id);
        for (FactId f : actions[i].del)
            deleters_[f].push_back(id);
    }
}

std::optional<FactId> PlanningInstance::find_fact(std::string_view text) const {
    auto it = fact_index_.find(canonical_name(text));
    if (it == fact_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<ActionId> PlanningInstance::find_action(std::string_view text) const {
    auto it = action_index_.find(canonical_name(text));
    if (it == action_index_.end())
        return std::nullopt;
    return it->second;
}

std::string PlanningInstance::fact_set_string(const FactSet &set) const {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i)
            out += ", ";
        out += facts[set[i]];
    }
    return out + "}";
}

std::string canonical_name(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty() && out.back() != '(' && c != ')')
            out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

FactSet make_fact_set(std::vector<FactId> facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    return facts;
}

bool is_subset(const FactSet &sub, const FactSet &super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace optmon
