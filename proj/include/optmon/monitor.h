#pragma once

#include "optmon/heuristics.h"
#include "optmon/landmarks.h"
#include "optmon/observations.h"
#include "optmon/task.h"

#include <string>
#include <vector>

namespace optmon {

enum class ApplyMode { strict, lenient };

struct MonitorConfig {
    HeuristicId heuristic = HeuristicId::hff;
    ApplyMode apply_mode = ApplyMode::strict;
    // Drop a landmark from prediction once it has held and then stopped holding.
    bool retire_landmarks = true;
};

struct StepVerdict {
    std::size_t index = 0;
    ActionId action = -1;
    Cost distance_before = 0;
    Cost distance_after = 0;
    bool predicted = false;
    bool applicable = true;
    bool sub_optimal = false;

    friend bool operator==(const StepVerdict &, const StepVerdict &) = default;
};

struct MonitorReport {
    std::vector<StepVerdict> verdicts;
    std::vector<std::size_t> sub_optimal_indices;
    State final_state;
    bool goal_reached = false;

    friend bool operator==(const MonitorReport &, const MonitorReport &) = default;
};

// Distance to a landmark: h_max over its facts (conjunctive) or the cheapest
// member (disjunctive).
Cost landmark_distance(const RelaxedGraph &graph, const Landmark &lm);
Cost landmark_distance(const PlanningInstance &instance, const State &state, const Landmark &lm);

// Actions expected next: for landmarks at distance 0, applicable actions that
// require one of their facts; for landmarks at distance 1, applicable actions
// that add one of their facts. `active` (optional) masks out landmarks.
std::vector<ActionId> predict_upcoming_actions(const PlanningInstance &instance,
                                               const State &state,
                                               const LandmarkGraph &landmarks,
                                               const std::vector<bool> *active = nullptr);

bool landmark_holds(const State &state, const Landmark &lm);

// Online monitor: one instance, one goal, advanced one observation at a time.
class MonitorSession {
public:
    MonitorSession(const PlanningInstance &instance, const State &start, const FactSet &goal,
                   MonitorConfig config);
    MonitorSession(const PlanningInstance &instance, MonitorConfig config);

    StepVerdict step(ActionId observation);
    MonitorReport report() const;

    const State &state() const { return state_; }
    const std::vector<ActionId> &predicted() const { return predicted_; }
    Cost distance() const { return distance_; }
    const LandmarkGraph &landmarks() const { return landmarks_; }

private:
    const PlanningInstance &instance_;
    FactSet goal_;
    MonitorConfig config_;
    LandmarkGraph landmarks_;
    std::vector<bool> seen_true_;
    std::vector<bool> active_;
    State state_;
    std::vector<ActionId> predicted_;
    Cost distance_ = 0;
    std::vector<StepVerdict> verdicts_;

    void refresh_landmarks();
};

MonitorReport monitor_plan_optimality(const PlanningInstance &instance,
                                      const ObservationSequence &obs,
                                      const MonitorConfig &config = {});
MonitorReport monitor_plan_optimality_from(const PlanningInstance &instance, const State &start,
                                           const FactSet &goal, const ObservationSequence &obs,
                                           const MonitorConfig &config = {});

std::string format_report_table(const PlanningInstance &instance, const MonitorReport &report);
// One tab-separated record per step: index, action, D_G, D'_G, predicted, sub_optimal.
std::string format_report_records(const PlanningInstance &instance, const MonitorReport &report);

}  // namespace optmon
