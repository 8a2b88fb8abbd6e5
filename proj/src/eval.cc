#include "optmon/eval.h"

#include "optmon/commitment.h"
#include "optmon/errors.h"
#include "optmon/grounding.h"
#include "optmon/io.h"
#include "optmon/monitor.h"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

namespace optmon {

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    if (tp + fp == 0)
        m.ppv_undefined = true;
    else
        m.ppv = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn == 0)
        m.tpr_undefined = true;
    else
        m.tpr = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (m.ppv + m.tpr > 0)
        m.f1 = 2 * m.ppv * m.tpr / (m.ppv + m.tpr);
    return m;
}

Metrics score_steps(const std::vector<std::size_t> &predicted,
                    const std::vector<std::size_t> &annotated) {
    std::vector<std::size_t> p = predicted, a = annotated;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::vector<std::size_t> both;
    std::set_intersection(p.begin(), p.end(), a.begin(), a.end(), std::back_inserter(both));
    return metrics_from_counts(both.size(), p.size() - both.size(), a.size() - both.size());
}

Metrics score_abandonment(const std::vector<bool> &verdicts, const std::vector<bool> &annotations) {
    if (verdicts.size() != annotations.size())
        throw Error("score_abandonment: " + std::to_string(verdicts.size()) + " verdicts but " +
                    std::to_string(annotations.size()) + " annotations");
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i] && annotations[i])
            ++tp;
        else if (verdicts[i])
            ++fp;
        else if (annotations[i])
            ++fn;
    }
    return metrics_from_counts(tp, fp, fn);
}

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string resolve_path(const std::string &base, const std::string &path) {
    if (path.empty())
        return path;
    std::filesystem::path p(path);
    if (p.is_absolute() || base.empty())
        return path;
    return (std::filesystem::path(base) / p).string();
}

std::string format_threshold(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", theta);
    return buf;
}

CaseResult run_case(const EvalCase &c, HeuristicId heuristic) {
    CaseResult r;
    r.id = c.id;
    r.group = c.domain_name;
    r.heuristic = heuristic;
    r.task_label = c.task == EvalTask::optimality ? "optimality" : "abandonment";
    auto started = std::chrono::steady_clock::now();
    try {
        PlanningInstance instance = load_instance_files(c.domain_path, c.problem_path);
        ObservationSequence obs = parse_observations(read_file(c.observations_path), instance);
        MonitorConfig config;
        config.heuristic = heuristic;
        config.apply_mode = ApplyMode::lenient;
        if (c.task == EvalTask::optimality) {
            r.observations = obs.size();
            for (std::size_t i : c.annotated)
                if (i >= obs.size())
                    throw Error("annotation index " + std::to_string(i) +
                                " is outside the observation sequence");
            MonitorReport report = monitor_plan_optimality(instance, obs, config);
            r.predicted = report.sub_optimal_indices;
            Metrics m = score_steps(r.predicted, c.annotated);
            r.tp = m.tp;
            r.fp = m.fp;
            r.fn = m.fn;
        } else {
            Commitment commitment = load_commitment(read_file(c.commitment_path), instance);
            r.task_label += "@" + format_threshold(commitment.threshold);
            CommitmentConfig cc;
            cc.monitor = config;
            AbandonmentVerdict v = has_abandoned(instance, commitment, obs, cc);
            r.observations = v.debtor_steps;
            r.verdict = v.abandoned;
            r.tp = v.abandoned && c.abandoned;
            r.fp = v.abandoned && !c.abandoned;
            r.fn = !v.abandoned && c.abandoned;
        }
    } catch (const std::exception &e) {
        r.error = true;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
}

}  // namespace

std::vector<EvalCase> parse_manifest(const std::string &text, const std::string &base_dir) {
    std::vector<EvalCase> cases;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> block;
    std::size_t line_no = 0, block_start = 0;
    auto flush = [&] {
        if (block.empty())
            return;
        EvalCase c;
        auto get = [&](const char *key) {
            auto it = block.find(key);
            return it == block.end() ? std::string() : it->second;
        };
        c.id = get("case");
        if (c.id.empty())
            c.id = "case-" + std::to_string(cases.size());
        c.domain_name = get("group");
        std::string task = get("task");
        if (task.empty() || task == "optimality")
            c.task = EvalTask::optimality;
        else if (task == "abandonment")
            c.task = EvalTask::abandonment;
        else
            throw ParseError("manifest: unknown task '" + task + "'", block_start, 1);
        c.domain_path = resolve_path(base_dir, get("domain"));
        c.problem_path = resolve_path(base_dir, get("problem"));
        c.observations_path = resolve_path(base_dir, get("observations"));
        c.commitment_path = resolve_path(base_dir, get("commitment"));
        if (c.domain_name.empty())
            c.domain_name = std::filesystem::path(c.domain_path).stem().string();
        std::string ann = get("annotation");
        std::stringstream parts(ann);
        std::string item;
        while (std::getline(parts, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            if (item.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("manifest: bad annotation index '" + item + "'", block_start, 1);
            c.annotated.push_back(static_cast<std::size_t>(std::stoul(item)));
        }
        c.abandoned = get("abandoned") == "true";
        std::string h = get("heuristic");
        if (!h.empty()) {
            c.heuristic = parse_heuristic(h);
            if (!c.heuristic)
                throw ParseError("manifest: unknown heuristic '" + h + "'", block_start, 1);
        }
        cases.push_back(std::move(c));
        block.clear();
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#')
            continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw ParseError("manifest: expected 'key: value'", line_no, 1);
        if (block.empty())
            block_start = line_no;
        block[trim(t.substr(0, colon))] = trim(t.substr(colon + 1));
    }
    flush();
    return cases;
}

EvalReport run_suite(const std::vector<EvalCase> &cases, const RunOptions &options) {
    std::vector<std::pair<std::size_t, HeuristicId>> jobs;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (options.heuristics.empty())
            jobs.emplace_back(i, cases[i].heuristic.value_or(HeuristicId::hff));
        else
            for (HeuristicId h : options.heuristics)
                jobs.emplace_back(i, h);
    }
    EvalReport report;
    report.cases.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++)
            report.cases[j] = run_case(cases[jobs[j].first], jobs[j].second);
    };
    std::size_t threads = std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();

    struct Acc {
        std::size_t cases = 0, tp = 0, fp = 0, fn = 0;
        double obs = 0, time = 0;
    };
    std::map<std::tuple<std::string, std::string, std::string>, Acc> groups;
    for (const auto &r : report.cases) {
        if (r.error) {
            ReportRow row;
            row.domain = r.group;
            row.task = r.task_label;
            row.heuristic = std::string(heuristic_name(r.heuristic));
            row.error_row = true;
            row.message = r.id + ": " + r.message;
            report.rows.push_back(std::move(row));
            continue;
        }
        auto &acc = groups[{r.group, r.task_label, std::string(heuristic_name(r.heuristic))}];
        ++acc.cases;
        acc.tp += r.tp;
        acc.fp += r.fp;
        acc.fn += r.fn;
        acc.obs += static_cast<double>(r.observations);
        acc.time += r.seconds;
    }
    std::vector<ReportRow> rows;
    for (const auto &[key, acc] : groups) {
        ReportRow row;
        std::tie(row.domain, row.task, row.heuristic) = key;
        row.cases = acc.cases;
        row.mean_obs = acc.obs / static_cast<double>(acc.cases);
        row.mean_time_s = acc.time / static_cast<double>(acc.cases);
        row.metrics = metrics_from_counts(acc.tp, acc.fp, acc.fn);
        rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow &a, const ReportRow &b) {
        return std::tie(a.domain, a.task, a.heuristic, a.message) <
               std::tie(b.domain, b.task, b.heuristic, b.message);
    });
    rows.insert(rows.end(), report.rows.begin(), report.rows.end());
    report.rows = std::move(rows);
    return report;
}

EvalReport run_manifest_file(const std::string &manifest_path, const RunOptions &options) {
    std::string base = std::filesystem::path(manifest_path).parent_path().string();
    return run_suite(parse_manifest(read_file(manifest_path), base), options);
}

std::string format_csv(const EvalReport &report) {
    std::string out = "domain,task,heuristic,mean_obs,mean_time_s,ppv,tpr,f1,note\n";
    char buf[256];
    for (const auto &row : report.rows) {
        if (row.error_row) {
            std::string msg = row.message;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out += row.domain + "," + row.task + "," + row.heuristic + ",,,,,,error: " + msg + "\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.2f,%.4f,%.4f,%.4f,%.4f,%s\n", row.domain.c_str(),
                      row.task.c_str(), row.heuristic.c_str(), row.mean_obs, row.mean_time_s,
                      row.metrics.ppv, row.metrics.tpr, row.metrics.f1,
                      (row.metrics.ppv_undefined || row.metrics.tpr_undefined) ? "undefined-as-zero"
                                                                               : "");
        out += buf;
    }
    return out;
}

std::string format_json(const EvalReport &report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : report.rows) {
        nlohmann::json j = {{"domain", row.domain},   {"task", row.task},
                            {"heuristic", row.heuristic}, {"error", row.error_row}};
        if (row.error_row) {
            j["message"] = row.message;
        } else {
            j["cases"] = row.cases;
            j["mean_obs"] = row.mean_obs;
            j["mean_time_s"] = row.mean_time_s;
            j["tp"] = row.metrics.tp;
            j["fp"] = row.metrics.fp;
            j["fn"] = row.metrics.fn;
            j["ppv"] = row.metrics.ppv;
            j["tpr"] = row.metrics.tpr;
            j["f1"] = row.metrics.f1;
            j["ppv_undefined"] = row.metrics.ppv_undefined;
            j["tpr_undefined"] = row.metrics.tpr_undefined;
        }
        rows.push_back(std::move(j));
    }
    nlohmann::json cases = nlohmann::json::array();
    for (const auto &c : report.cases) {
        cases.push_back({{"id", c.id},
                         {"group", c.group},
                         {"task", c.task_label},
                         {"heuristic", std::string(heuristic_name(c.heuristic))},
                         {"error", c.error},
                         {"message", c.message},
                         {"observations", c.observations},
                         {"seconds", c.seconds},
                         {"predicted", c.predicted},
                         {"verdict", c.verdict}});
    }
    return nlohmann::json{{"rows", rows}, {"cases", cases}}.dump(2) + "\n";
}

}  // namespace optmon
