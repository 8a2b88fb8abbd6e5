#include "optmon/commitment.h"

#include "optmon/errors.h"
#include "optmon/landmarks.h"
#include "optmon/planning.h"
#include "optmon/sexpr.h"

#include <algorithm>
#include <cstdlib>

namespace optmon {

namespace {

FactSet resolve_facts(const sexpr::Node &node, const PlanningInstance &instance,
                      const char *field) {
    std::vector<const sexpr::Node *> atoms;
    if (node.has_head("and")) {
        for (std::size_t i = 1; i < node.items.size(); ++i)
            atoms.push_back(&node.items[i]);
    } else if (node.is_list && !node.items.empty() && node.items.front().is_list) {
        for (const auto &item : node.items)
            atoms.push_back(&item);
    } else {
        atoms.push_back(&node);
    }
    FactSet facts;
    for (const auto *atom : atoms) {
        if (!atom->is_list)
            throw CommitmentError(std::string(field) + ": expected a fact, got " + atom->atom);
        std::string text = sexpr::to_string(*atom);
        auto id = instance.find_fact(text);
        if (!id)
            throw CommitmentError(std::string(field) + ": unknown fact " + text);
        facts.push_back(*id);
    }
    if (facts.empty())
        throw CommitmentError(std::string(field) + " must not be empty");
    return make_fact_set(std::move(facts));
}

bool sa_like(const PlanningInstance &instance, FactId f) {
    return instance.achievers(f).empty() && instance.deleters(f).empty() &&
           !instance.consumers(f).empty();
}

}  // namespace

Commitment load_commitment(std::string_view text, const PlanningInstance &instance) {
    sexpr::Node root;
    try {
        root = sexpr::parse_one(text);
    } catch (const ParseError &e) {
        throw CommitmentError(std::string("commitment file: ") + e.what());
    }
    if (!root.has_head("commitment"))
        throw CommitmentError("commitment file must start with (commitment ...)");
    Commitment c;
    bool have_antecedent = false, have_consequent = false, have_threshold = false;
    for (std::size_t i = 1; i < root.items.size(); i += 2) {
        const auto &key = root.items[i];
        if (!key.is_atom() || i + 1 >= root.items.size())
            throw CommitmentError("malformed commitment near item " + std::to_string(i));
        const auto &value = root.items[i + 1];
        if (key.atom == ":debtor") {
            c.debtor = value.atom;
        } else if (key.atom == ":creditor") {
            c.creditor = value.atom;
        } else if (key.atom == ":antecedent") {
            c.antecedent = resolve_facts(value, instance, "antecedent");
            have_antecedent = true;
        } else if (key.atom == ":consequent") {
            c.consequent = resolve_facts(value, instance, "consequent");
            have_consequent = true;
        } else if (key.atom == ":threshold") {
            char *end = nullptr;
            c.threshold = std::strtod(value.atom.c_str(), &end);
            if (value.atom.empty() || *end != '\0')
                throw CommitmentError("threshold is not a number: " + value.atom);
            if (!(c.threshold >= 0.0 && c.threshold <= 1.0))
                throw CommitmentError("threshold must lie in [0, 1], got " + value.atom);
            have_threshold = true;
        } else if (key.atom == ":debtor-start") {
            char *end = nullptr;
            long k = std::strtol(value.atom.c_str(), &end, 10);
            if (value.atom.empty() || *end != '\0' || k < 0)
                throw CommitmentError("debtor-start must be a non-negative integer");
            c.debtor_start = static_cast<std::size_t>(k);
        } else {
            throw CommitmentError("unknown commitment key " + key.atom);
        }
    }
    if (!have_antecedent || !have_consequent || !have_threshold)
        throw CommitmentError("commitment needs :antecedent, :consequent and :threshold");
    return c;
}

std::string_view reason_name(AbandonReason reason) {
    switch (reason) {
    case AbandonReason::strictly_activating_violation:
        return "strictly_activating_violation";
    case AbandonReason::partition_unreachable:
        return "partition_unreachable";
    case AbandonReason::threshold_exceeded:
        return "threshold_exceeded";
    case AbandonReason::still_committed:
        return "still_committed";
    }
    return "still_committed";
}

AbandonmentVerdict has_abandoned(const PlanningInstance &instance, const Commitment &commitment,
                                 const ObservationSequence &obs, const CommitmentConfig &config) {
    if (commitment.debtor_start > obs.size())
        throw CommitmentError("debtor-start is past the end of the observations");
    State start = instance.initial_state();
    for (std::size_t i = 0; i < commitment.debtor_start; ++i) {
        const auto &a = instance.actions[obs.steps[i]];
        if (!applicable(start, a))
            throw CommitmentError("creditor observation " + std::to_string(i) + " " + a.name +
                                  " is not applicable");
        apply_effects(start, a);
    }
    if (!start.contains_all(commitment.antecedent))
        throw CommitmentError("antecedent " + instance.fact_set_string(commitment.antecedent) +
                              " does not hold when the debtor starts");

    ObservationSequence debtor;
    debtor.steps.assign(obs.steps.begin() + static_cast<std::ptrdiff_t>(commitment.debtor_start),
                        obs.steps.end());

    AbandonmentVerdict verdict;
    verdict.debtor_steps = debtor.size();
    verdict.allowed = commitment.threshold * static_cast<double>(debtor.size());
    verdict.partitions = partition_facts_from(instance, start);
    const FactSet &goal = commitment.consequent;
    LandmarkGraph landmarks = extract_landmarks_for(instance, start, goal);

    auto fire = [&](AbandonReason reason) {
        verdict.abandoned = true;
        verdict.reason = reason;
        return verdict;
    };

    // A landmark fact whose every achiever needs a never-changing fact that is
    // false now can no longer be reached.
    if (!verdict.partitions.strictly_activating.empty()) {
        for (const auto &lm : landmarks.landmarks) {
            if (lm.kind != LandmarkKind::conjunctive)
                continue;
            for (FactId g : lm.facts) {
                if (start.contains(g))
                    continue;
                bool blocked = std::all_of(
                    instance.achievers(g).begin(), instance.achievers(g).end(), [&](ActionId a) {
                        const auto &pre = instance.actions[a].pre;
                        return std::any_of(pre.begin(), pre.end(), [&](FactId p) {
                            return sa_like(instance, p) && !start.contains(p);
                        });
                    });
                if (blocked)
                    return fire(AbandonReason::strictly_activating_violation);
            }
        }
    }

    const auto &ua = verdict.partitions.unstable_activating;
    const auto &st = verdict.partitions.strictly_terminal;
    if (!ua.empty() || (config.terminal_clause && !st.empty())) {
        std::vector<bool> in_closure(instance.num_facts(), false);
        for (const auto &lm : landmarks.landmarks)
            for (FactId f : lm.facts)
                in_closure[f] = true;
        std::vector<bool> achieved(landmarks.landmarks.size(), false);
        const std::vector<bool> none(instance.num_actions(), false);
        State s = start;
        auto mark = [&] {
            for (std::size_t i = 0; i < landmarks.landmarks.size(); ++i)
                if (landmark_holds(s, landmarks.landmarks[i]))
                    achieved[i] = true;
        };
        mark();
        for (ActionId o : debtor.steps) {
            const auto &a = instance.actions[o];
            if (!applicable(s, a))
                break;
            State next = s;
            apply_effects(next, a);
            // An unstable activating fact never comes back once deleted, so
            // losing one that a landmark needs is fatal when the consequent
            // is out of relaxed reach afterwards.
            for (FactId f : a.del) {
                if (!std::binary_search(ua.begin(), ua.end(), f) || !s.contains(f) ||
                    !in_closure[f])
                    continue;
                if (!relaxed_solvable(instance, next, goal, none))
                    return fire(AbandonReason::partition_unreachable);
            }
            if (config.terminal_clause) {
                for (FactId f : a.add) {
                    if (s.contains(f) || in_closure[f] ||
                        !std::binary_search(st.begin(), st.end(), f))
                        continue;
                    for (std::size_t i = 0; i < landmarks.landmarks.size(); ++i) {
                        if (achieved[i])
                            continue;
                        const auto &lm = landmarks.landmarks[i];
                        bool reachable =
                            lm.kind == LandmarkKind::conjunctive
                                ? relaxed_solvable(instance, next, lm.facts, none)
                                : std::any_of(lm.facts.begin(), lm.facts.end(), [&](FactId g) {
                                      return relaxed_solvable(instance, next, {g}, none);
                                  });
                        if (!reachable)
                            return fire(AbandonReason::partition_unreachable);
                    }
                }
            }
            s = std::move(next);
            mark();
        }
    }

    verdict.report = monitor_plan_optimality_from(instance, start, goal, debtor, config.monitor);
    State s = start;
    if (s.contains_all(goal))
        verdict.consequent_reached_at = 0;
    for (const auto &v : verdict.report.verdicts) {
        if (verdict.consequent_reached_at)
            break;
        if (v.sub_optimal)
            verdict.counted_indices.push_back(v.index);
        if (v.applicable)
            apply_effects(s, instance.actions[v.action]);
        if (s.contains_all(goal))
            verdict.consequent_reached_at = v.index + 1;
    }
    verdict.sub_optimal_count = verdict.counted_indices.size();
    if (static_cast<double>(verdict.sub_optimal_count) > verdict.allowed)
        return fire(AbandonReason::threshold_exceeded);
    verdict.reason = AbandonReason::still_committed;
    return verdict;
}

std::string format_verdict_line(const AbandonmentVerdict &verdict) {
    if (verdict.abandoned)
        return "ABANDONED " + std::string(reason_name(verdict.reason));
    return "COMMITTED";
}

}  // namespace optmon
