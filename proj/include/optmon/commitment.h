#pragma once

#include "optmon/monitor.h"
#include "optmon/observations.h"
#include "optmon/partitions.h"
#include "optmon/task.h"

#include <string>
#include <string_view>

namespace optmon {

struct Commitment {
    std::string debtor;
    std::string creditor;
    FactSet antecedent;
    FactSet consequent;
    double threshold = 0.0;
    // Observations before this index were executed by the creditor to bring
    // about the antecedent; they are replayed but not judged.
    std::size_t debtor_start = 0;
};

// (commitment :debtor T :creditor P :antecedent (f ...) :consequent (g ...)
//             :threshold 0.3 [:debtor-start k])
Commitment load_commitment(std::string_view text, const PlanningInstance &instance);

enum class AbandonReason {
    strictly_activating_violation,
    partition_unreachable,
    threshold_exceeded,
    still_committed
};

std::string_view reason_name(AbandonReason reason);

struct CommitmentConfig {
    MonitorConfig monitor;
    // Also fire when a strictly terminal fact outside the consequent's
    // landmarks appears and a pending landmark becomes relaxed-unreachable.
    bool terminal_clause = false;
};

struct AbandonmentVerdict {
    bool abandoned = false;
    AbandonReason reason = AbandonReason::still_committed;
    std::size_t sub_optimal_count = 0;
    double allowed = 0.0;
    std::size_t debtor_steps = 0;
    // Debtor-relative indices counted towards the threshold.
    std::vector<std::size_t> counted_indices;
    // Number of debtor steps executed when the consequent first held; later
    // steps are not counted.
    std::optional<std::size_t> consequent_reached_at;
    MonitorReport report;
    FactPartitions partitions;
};

// Throws CommitmentError when the antecedent does not hold after the
// creditor prefix (or the prefix is not executable).
AbandonmentVerdict has_abandoned(const PlanningInstance &instance, const Commitment &commitment,
                                 const ObservationSequence &obs,
                                 const CommitmentConfig &config = {});

std::string format_verdict_line(const AbandonmentVerdict &verdict);

}  // namespace optmon
