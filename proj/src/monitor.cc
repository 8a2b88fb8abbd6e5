#include "optmon/monitor.h"

#include "optmon/errors.h"
#include "optmon/planning.h"

#include <algorithm>
#include <cstdio>

namespace optmon {

Cost landmark_distance(const RelaxedGraph &graph, const Landmark &lm) {
    if (lm.kind == LandmarkKind::conjunctive)
        return h_max(graph, lm.facts);
    Cost best = kInfinity;
    for (FactId f : lm.facts)
        best = std::min(best, graph.fact_level[f]);
    return best;
}

Cost landmark_distance(const PlanningInstance &instance, const State &state, const Landmark &lm) {
    return landmark_distance(build_relaxed_graph(instance, state), lm);
}

bool landmark_holds(const State &state, const Landmark &lm) {
    if (lm.kind == LandmarkKind::conjunctive)
        return state.contains_all(lm.facts);
    return std::any_of(lm.facts.begin(), lm.facts.end(),
                       [&](FactId f) { return state.contains(f); });
}

std::vector<ActionId> predict_upcoming_actions(const PlanningInstance &instance,
                                               const State &state,
                                               const LandmarkGraph &landmarks,
                                               const std::vector<bool> *active) {
    RelaxedGraph graph = build_relaxed_graph(instance, state);
    std::vector<bool> chosen(instance.num_actions(), false);
    for (std::size_t i = 0; i < landmarks.landmarks.size(); ++i) {
        if (active && !(*active)[i])
            continue;
        const Landmark &lm = landmarks.landmarks[i];
        Cost d = landmark_distance(graph, lm);
        if (d == 0) {
            for (FactId f : lm.facts)
                for (ActionId a : instance.consumers(f))
                    if (applicable(state, instance.actions[a]))
                        chosen[a] = true;
        } else if (d == 1) {
            for (FactId f : lm.facts)
                for (ActionId a : instance.achievers(f))
                    if (applicable(state, instance.actions[a]))
                        chosen[a] = true;
        }
    }
    std::vector<ActionId> out;
    for (std::size_t a = 0; a < chosen.size(); ++a)
        if (chosen[a])
            out.push_back(static_cast<ActionId>(a));
    return out;
}

MonitorSession::MonitorSession(const PlanningInstance &instance, const State &start,
                               const FactSet &goal, MonitorConfig config)
    : instance_(instance), goal_(goal), config_(config),
      landmarks_(extract_landmarks_for(instance, start, goal)),
      seen_true_(landmarks_.landmarks.size(), false),
      active_(landmarks_.landmarks.size(), true), state_(start) {
    refresh_landmarks();
    predicted_ = predict_upcoming_actions(instance_, state_, landmarks_, &active_);
    distance_ = estimate_goal_distance(instance_, state_, goal_, config_.heuristic);
}

MonitorSession::MonitorSession(const PlanningInstance &instance, MonitorConfig config)
    : MonitorSession(instance, instance.initial_state(), instance.goal, config) {}

void MonitorSession::refresh_landmarks() {
    for (std::size_t i = 0; i < landmarks_.landmarks.size(); ++i) {
        bool holds = landmark_holds(state_, landmarks_.landmarks[i]);
        if (holds)
            seen_true_[i] = true;
        else if (seen_true_[i] && config_.retire_landmarks)
            active_[i] = false;
    }
}

StepVerdict MonitorSession::step(ActionId observation) {
    StepVerdict v;
    v.index = verdicts_.size();
    v.action = observation;
    v.distance_before = distance_;
    v.predicted = std::binary_search(predicted_.begin(), predicted_.end(), observation);
    const GroundAction &action = instance_.actions[observation];
    if (!applicable(state_, action)) {
        if (config_.apply_mode == ApplyMode::strict)
            throw ObservationInfeasibleError(v.index, action.name);
        v.applicable = false;
        v.distance_after = distance_;
        v.sub_optimal = true;
        verdicts_.push_back(v);
        return v;
    }
    apply_effects(state_, action);
    v.distance_after = estimate_goal_distance(instance_, state_, goal_, config_.heuristic);
    bool both_infinite = is_infinite(v.distance_before) && is_infinite(v.distance_after);
    bool increased = !both_infinite && v.distance_after > v.distance_before;
    v.sub_optimal = !v.predicted && increased;
    refresh_landmarks();
    predicted_ = predict_upcoming_actions(instance_, state_, landmarks_, &active_);
    distance_ = v.distance_after;
    verdicts_.push_back(v);
    return v;
}

MonitorReport MonitorSession::report() const {
    MonitorReport r;
    r.verdicts = verdicts_;
    for (const auto &v : verdicts_)
        if (v.sub_optimal)
            r.sub_optimal_indices.push_back(v.index);
    r.final_state = state_;
    r.goal_reached = state_.contains_all(goal_);
    return r;
}

MonitorReport monitor_plan_optimality_from(const PlanningInstance &instance, const State &start,
                                           const FactSet &goal, const ObservationSequence &obs,
                                           const MonitorConfig &config) {
    MonitorSession session(instance, start, goal, config);
    for (ActionId o : obs.steps)
        session.step(o);
    return session.report();
}

MonitorReport monitor_plan_optimality(const PlanningInstance &instance,
                                      const ObservationSequence &obs,
                                      const MonitorConfig &config) {
    return monitor_plan_optimality_from(instance, instance.initial_state(), instance.goal, obs,
                                        config);
}

std::string format_report_table(const PlanningInstance &instance, const MonitorReport &report) {
    std::size_t width = 6;
    for (const auto &v : report.verdicts)
        width = std::max(width, instance.actions[v.action].name.size());
    std::string out;
    char buf[64];
    auto pad = [](std::string s, std::size_t w) {
        s.resize(std::max(s.size(), w), ' ');
        return s;
    };
    out += pad("step", 6) + pad("action", width + 2) + pad("D_G", 6) + pad("D'_G", 6) +
           pad("pred", 6) + "flag\n";
    for (const auto &v : report.verdicts) {
        std::snprintf(buf, sizeof buf, "%zu", v.index);
        out += pad(buf, 6) + pad(instance.actions[v.action].name, width + 2) +
               pad(cost_to_string(v.distance_before), 6) +
               pad(cost_to_string(v.distance_after), 6) + pad(v.predicted ? "yes" : "no", 6);
        if (!v.applicable)
            out += "SUB-OPTIMAL (inapplicable)";
        else if (v.sub_optimal)
            out += "SUB-OPTIMAL";
        out += "\n";
    }
    out += "sub-optimal steps: {";
    for (std::size_t i = 0; i < report.sub_optimal_indices.size(); ++i)
        out += (i ? ", " : "") + std::to_string(report.sub_optimal_indices[i]);
    out += "}\ngoal reached: ";
    out += report.goal_reached ? "yes\n" : "no\n";
    return out;
}

std::string format_report_records(const PlanningInstance &instance, const MonitorReport &report) {
    std::string out = "index\taction\td_before\td_after\tpredicted\tsub_optimal\n";
    for (const auto &v : report.verdicts) {
        out += std::to_string(v.index) + "\t" + instance.actions[v.action].name + "\t" +
               cost_to_string(v.distance_before) + "\t" + cost_to_string(v.distance_after) +
               "\t" + (v.predicted ? "1" : "0") + "\t" + (v.sub_optimal ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace optmon
