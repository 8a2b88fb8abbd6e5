#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace optmon {

using FactId = int;
using ActionId = int;
// Sorted, duplicate-free list of fact indices.
using FactSet = std::vector<FactId>;

struct GroundAction {
    std::string name;  // canonical "(op arg1 ... argk)", lower case
    FactSet pre;
    FactSet add;
    FactSet del;
};

// Set of true facts over a fixed universe, stored as a bitset.
class State {
public:
    State() = default;
    explicit State(std::size_t num_facts);
    State(std::size_t num_facts, const FactSet &facts);

    std::size_t universe_size() const { return size_; }
    bool contains(FactId f) const {
        return (words_[static_cast<std::size_t>(f) >> 6] >> (f & 63)) & 1u;
    }
    bool contains_all(const FactSet &facts) const;
    void insert(FactId f) { words_[static_cast<std::size_t>(f) >> 6] |= std::uint64_t(1) << (f & 63); }
    void erase(FactId f) { words_[static_cast<std::size_t>(f) >> 6] &= ~(std::uint64_t(1) << (f & 63)); }
    FactSet facts() const;
    std::size_t count() const;
    std::size_t hash() const;

    friend bool operator==(const State &, const State &) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateHash {
    std::size_t operator()(const State &s) const { return s.hash(); }
};

class PlanningInstance {
public:
    std::vector<std::string> facts;  // Σ, canonical "(pred arg ...)"
    std::vector<GroundAction> actions;
    FactSet init;
    FactSet goal;

    // Must be called after facts/actions change; builds the lookup tables.
    void finalize();

    std::size_t num_facts() const { return facts.size(); }
    std::size_t num_actions() const { return actions.size(); }
    State initial_state() const { return State(facts.size(), init); }
    State make_state(const FactSet &set) const { return State(facts.size(), set); }

    std::optional<FactId> find_fact(std::string_view text) const;
    std::optional<ActionId> find_action(std::string_view text) const;

    const std::vector<ActionId> &achievers(FactId f) const { return achievers_[f]; }
    const std::vector<ActionId> &consumers(FactId f) const { return consumers_[f]; }
    const std::vector<ActionId> &deleters(FactId f) const { return deleters_[f]; }

    std::string fact_set_string(const FactSet &set) const;

private:
    std::unordered_map<std::string, FactId> fact_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::vector<std::vector<ActionId>> achievers_;
    std::vector<std::vector<ActionId>> consumers_;
    std::vector<std::vector<ActionId>> deleters_;
};

// Lower-cases and collapses whitespace so "(Drive  T1 A B)" matches "(drive t1 a b)".
std::string canonical_name(std::string_view text);

FactSet make_fact_set(std::vector<FactId> facts);
bool is_subset(const FactSet &sub, const FactSet &super);

}  // namespace optmon
