#include "optmon/landmarks.h"

#include "optmon/heuristics.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace optmon {

std::optional<std::size_t> LandmarkGraph::find(const Landmark &lm) const {
    for (std::size_t i = 0; i < landmarks.size(); ++i)
        if (landmarks[i] == lm)
            return i;
    return std::nullopt;
}

bool relaxed_solvable(const PlanningInstance &instance, const State &start, const FactSet &goal,
                      const std::vector<bool> &disabled) {
    std::vector<bool> reached(instance.num_facts(), false);
    std::vector<FactId> queue;
    for (FactId f : start.facts()) {
        reached[f] = true;
        queue.push_back(f);
    }
    std::vector<std::size_t> unsatisfied(instance.num_actions());
    auto fire = [&](std::size_t a) {
        for (FactId g : instance.actions[a].add)
            if (!reached[g]) {
                reached[g] = true;
                queue.push_back(g);
            }
    };
    for (std::size_t a = 0; a < instance.num_actions(); ++a) {
        unsatisfied[a] = instance.actions[a].pre.size();
        if (unsatisfied[a] == 0 && !disabled[a])
            fire(a);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (ActionId a : instance.consumers(queue[head]))
            if (--unsatisfied[a] == 0 && !disabled[a])
                fire(static_cast<std::size_t>(a));
    }
    return std::all_of(goal.begin(), goal.end(), [&](FactId g) { return reached[g]; });
}

bool verify_landmark_for(const PlanningInstance &instance, const State &start,
                         const FactSet &goal, const Landmark &candidate) {
    if (candidate.facts.empty())
        return false;
    auto trivially_holds = [&](FactId f) {
        return start.contains(f) || std::binary_search(goal.begin(), goal.end(), f);
    };
    auto unreachable_without = [&](const FactSet &facts) {
        std::vector<bool> disabled(instance.num_actions(), false);
        for (FactId f : facts)
            for (ActionId a : instance.achievers(f))
                disabled[a] = true;
        return !relaxed_solvable(instance, start, goal, disabled);
    };
    if (candidate.kind == LandmarkKind::conjunctive) {
        for (FactId f : candidate.facts)
            if (!trivially_holds(f) && !unreachable_without({f}))
                return false;
        return true;
    }
    if (std::any_of(candidate.facts.begin(), candidate.facts.end(), trivially_holds))
        return true;
    return unreachable_without(candidate.facts);
}

bool verify_landmark(const PlanningInstance &instance, const Landmark &candidate) {
    return verify_landmark_for(instance, instance.initial_state(), instance.goal, candidate);
}

namespace {

std::string predicate_of(const std::string &fact) {
    auto end = fact.find_first_of(" )", 1);
    return fact.substr(1, end - 1);
}

class Extractor {
public:
    Extractor(const PlanningInstance &instance, const State &start, const FactSet &goal)
        : instance_(instance), start_(start), goal_(goal),
          graph_(build_relaxed_graph(instance, start)) {
        constant_.assign(instance.num_facts(), false);
        for (FactId f : start.facts())
            constant_[f] = instance.achievers(f).empty() && instance.deleters(f).empty();
    }

    LandmarkGraph run() {
        std::size_t root = add({LandmarkKind::conjunctive, goal_}, std::nullopt);
        for (FactId g : goal_) {
            std::size_t single = add({LandmarkKind::conjunctive, {g}}, root);
            queue_.emplace_back(g, single);
        }
        std::set<FactId> done;
        while (!queue_.empty()) {
            auto [f, origin] = queue_.front();
            queue_.pop_front();
            if (!done.insert(f).second)
                continue;
            expand(f, origin);
        }
        return std::move(result_);
    }

private:
    const PlanningInstance &instance_;
    const State &start_;
    const FactSet &goal_;
    RelaxedGraph graph_;
    std::vector<bool> constant_;
    LandmarkGraph result_;
    std::deque<std::pair<FactId, std::size_t>> queue_;

    std::size_t add(Landmark lm, std::optional<std::size_t> later) {
        auto existing = result_.find(lm);
        std::size_t index;
        if (existing) {
            index = *existing;
        } else {
            index = result_.landmarks.size();
            result_.landmarks.push_back(std::move(lm));
        }
        if (later && *later != index) {
            std::pair<std::size_t, std::size_t> edge{index, *later};
            if (std::find(result_.orderings.begin(), result_.orderings.end(), edge) ==
                result_.orderings.end())
                result_.orderings.push_back(edge);
        }
        return index;
    }

    void expand(FactId f, std::size_t origin) {
        Cost level = graph_.fact_level[f];
        if (level == 0 || is_infinite(level))
            return;
        std::vector<ActionId> first;
        for (ActionId a : instance_.achievers(f))
            if (graph_.action_level[a] == level - 1)
                first.push_back(a);
        if (first.empty())
            return;

        FactSet shared;
        for (FactId p : instance_.actions[first.front()].pre)
            if (!constant_[p])
                shared.push_back(p);
        for (std::size_t i = 1; i < first.size(); ++i) {
            FactSet next;
            const auto &pre = instance_.actions[first[i]].pre;
            std::set_intersection(shared.begin(), shared.end(), pre.begin(), pre.end(),
                                  std::back_inserter(next));
            shared = std::move(next);
        }
        if (!shared.empty()) {
            Landmark lm{LandmarkKind::conjunctive, shared};
            if (verify_landmark_for(instance_, start_, goal_, lm)) {
                std::size_t index = add(lm, origin);
                for (FactId p : shared)
                    queue_.emplace_back(p, index);
            }
        }

        if (first.size() < 2)
            return;
        // Per predicate symbol, every achiever must contribute at least one fact.
        std::map<std::string, FactSet> groups;
        std::map<std::string, std::size_t> contributors;
        for (ActionId a : first) {
            std::set<std::string> seen;
            for (FactId p : instance_.actions[a].pre) {
                if (constant_[p] || std::binary_search(shared.begin(), shared.end(), p))
                    continue;
                std::string pred = predicate_of(instance_.facts[p]);
                groups[pred].push_back(p);
                seen.insert(pred);
            }
            for (const auto &pred : seen)
                ++contributors[pred];
        }
        for (auto &[pred, facts] : groups) {
            if (contributors[pred] != first.size())
                continue;
            FactSet set = make_fact_set(facts);
            if (set.size() < 2 || set.size() > 4)
                continue;
            Landmark lm{LandmarkKind::disjunctive, set};
            if (verify_landmark_for(instance_, start_, goal_, lm))
                add(lm, origin);
        }
    }
};

}  // namespace

LandmarkGraph extract_landmarks_for(const PlanningInstance &instance, const State &start,
                                    const FactSet &goal) {
    return Extractor(instance, start, goal).run();
}

LandmarkGraph extract_landmarks(const PlanningInstance &instance) {
    return extract_landmarks_for(instance, instance.initial_state(), instance.goal);
}

std::string format_landmark(const PlanningInstance &instance, const Landmark &lm) {
    std::string out = lm.kind == LandmarkKind::conjunctive ? "(and" : "(or";
    for (FactId f : lm.facts)
        out += " " + instance.facts[f];
    return out + ")";
}

std::string format_landmarks(const PlanningInstance &instance, const LandmarkGraph &graph) {
    std::string out;
    for (const auto &lm : graph.landmarks)
        out += format_landmark(instance, lm) + "\n";
    return out;
}

std::string format_orderings_dot(const PlanningInstance &instance, const LandmarkGraph &graph) {
    std::string out = "digraph landmarks {\n";
    for (std::size_t i = 0; i < graph.landmarks.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" +
               format_landmark(instance, graph.landmarks[i]) + "\"];\n";
    for (const auto &[earlier, later] : graph.orderings)
        out += "  n" + std::to_string(earlier) + " -> n" + std::to_string(later) + ";\n";
    return out + "}\n";
}

}  // namespace optmon
