#pragma once

#include "optmon/heuristics.h"

#include <optional>
#include <string>
#include <vector>

namespace optmon {

struct Metrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double ppv = 0.0;
    double tpr = 0.0;
    double f1 = 0.0;
    // Zero denominators are scored as 0 and flagged here.
    bool ppv_undefined = false;
    bool tpr_undefined = false;
};

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);
Metrics score_steps(const std::vector<std::size_t> &predicted,
                    const std::vector<std::size_t> &annotated);
// Throws optmon::Error when the lists differ in length.
Metrics score_abandonment(const std::vector<bool> &verdicts, const std::vector<bool> &annotations);

enum class EvalTask { optimality, abandonment };

struct EvalCase {
    std::string id;
    std::string domain_name;  // grouping label, e.g. "logistics"
    EvalTask task = EvalTask::optimality;
    std::string domain_path;
    std::string problem_path;
    std::string observations_path;
    std::string commitment_path;  // abandonment cases only
    std::vector<std::size_t> annotated;  // optimality cases
    bool abandoned = false;              // abandonment cases
    std::optional<HeuristicId> heuristic;
};

// Blank-line separated blocks of "key: value" lines. Keys: case, group, task
// (optimality|abandonment), domain, problem, observations, commitment,
// annotation (comma separated indices), abandoned (true|false), heuristic.
// Relative paths are resolved against base_dir. '#' starts a comment line.
std::vector<EvalCase> parse_manifest(const std::string &text, const std::string &base_dir);

struct CaseResult {
    std::string id;
    std::string group;
    std::string task_label;
    HeuristicId heuristic = HeuristicId::hff;
    bool error = false;
    std::string message;
    std::size_t observations = 0;
    double seconds = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0;
    std::vector<std::size_t> predicted;
    bool verdict = false;
};

struct ReportRow {
    std::string domain;
    std::string task;
    std::string heuristic;
    std::size_t cases = 0;
    double mean_obs = 0.0;
    double mean_time_s = 0.0;
    Metrics metrics;
    bool error_row = false;
    std::string message;
};

struct EvalReport {
    std::vector<ReportRow> rows;
    std::vector<CaseResult> cases;
};

struct RunOptions {
    // Heuristics to evaluate every case with; empty means the case's own
    // heuristic (hff when unset).
    std::vector<HeuristicId> heuristics;
    std::size_t jobs = 1;
};

// Scores every case; failures become error rows and the run continues.
// Counts are pooled per (group, task, heuristic); rows are sorted.
EvalReport run_suite(const std::vector<EvalCase> &cases, const RunOptions &options = {});
EvalReport run_manifest_file(const std::string &manifest_path, const RunOptions &options = {});

std::string format_csv(const EvalReport &report);
std::string format_json(const EvalReport &report);

}  // namespace optmon
