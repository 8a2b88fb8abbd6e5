#include "optmon/commitment.h"
#include "optmon/errors.h"
#include "optmon/eval.h"
#include "optmon/grounding.h"
#include "optmon/io.h"
#include "optmon/landmarks.h"
#include "optmon/monitor.h"
#include "optmon/partitions.h"
#include "optmon/planning.h"
#include "optmon/suite.h"

#include <CLI11.hpp>

#include <iostream>

using namespace optmon;

namespace {

HeuristicId heuristic_or_throw(const std::string &name) {
    auto id = parse_heuristic(name);
    if (!id)
        throw Error("unknown heuristic '" + name +
                    "' (expected hmax, hsum, hadjsum, hadjsum2, hadjsum2m, hcombo, hff, setlevel)");
    return *id;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Plan optimality and commitment abandonment monitoring for STRIPS tasks"};
    app.require_subcommand(1);

    std::string domain, problem, obs_path, commitment_path, heuristic = "hff";
    std::string manifest, json_out, out_dir, dot_out;
    bool strict = false, lenient = false, terminal_clause = false, keep_landmarks = false;
    std::size_t jobs = 1, depth = 30;
    unsigned seed = 1;
    std::vector<std::string> heuristics;

    auto add_task = [&](CLI::App *cmd) {
        cmd->add_option("--domain", domain, "PDDL domain file")->required();
        cmd->add_option("--problem", problem, "PDDL problem file")->required();
    };

    auto *ground_cmd = app.add_subcommand("ground", "Print the grounded task");
    add_task(ground_cmd);

    auto *validate_cmd = app.add_subcommand("validate", "Check a plan and report the first failure");
    add_task(validate_cmd);
    validate_cmd->add_option("--obs", obs_path, "plan file, one action per line")->required();

    auto *optimal_cmd = app.add_subcommand("optimal", "Enumerate all optimal plans by BFS");
    add_task(optimal_cmd);
    optimal_cmd->add_option("--depth", depth, "depth bound");

    auto *lm_cmd = app.add_subcommand("landmarks", "Extract fact landmarks");
    add_task(lm_cmd);
    lm_cmd->add_option("--dot", dot_out, "write orderings as a dot graph");

    auto *part_cmd = app.add_subcommand("partitions", "Classify facts into partitions");
    add_task(part_cmd);

    auto *mon_cmd = app.add_subcommand("monitor", "Flag sub-optimal observed steps");
    add_task(mon_cmd);
    mon_cmd->add_option("--obs", obs_path, "observation file")->required();
    mon_cmd->add_option("--heuristic", heuristic, "goal-distance heuristic");
    mon_cmd->add_flag("--strict", strict, "abort on inapplicable observations (default)");
    mon_cmd->add_flag("--lenient", lenient, "flag inapplicable observations and continue");
    mon_cmd->add_flag("--keep-landmarks", keep_landmarks,
                      "never retire landmarks that have held and stopped holding");

    auto *ab_cmd = app.add_subcommand("abandonment", "Decide whether a commitment was abandoned");
    add_task(ab_cmd);
    ab_cmd->add_option("--obs", obs_path, "observation file")->required();
    ab_cmd->add_option("--commitment", commitment_path, "commitment file")->required();
    ab_cmd->add_option("--heuristic", heuristic, "goal-distance heuristic");
    ab_cmd->add_flag("--lenient", lenient, "flag inapplicable observations and continue");
    ab_cmd->add_flag("--terminal-clause", terminal_clause,
                     "also fire on strictly terminal facts that cut off the consequent");

    auto *eval_cmd = app.add_subcommand("eval", "Score a manifest of annotated cases");
    eval_cmd->add_option("--manifest", manifest, "manifest file")->required();
    eval_cmd->add_option("--jobs", jobs, "worker threads");
    eval_cmd->add_option("--json", json_out, "also write a JSON report");
    eval_cmd->add_option("--heuristics", heuristics, "evaluate with these heuristics");

    auto *gen_cmd = app.add_subcommand("gen-suite", "Write the generated oracle-labelled suite");
    gen_cmd->add_option("--out", out_dir, "output directory")->required();
    gen_cmd->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ground_cmd) {
            auto inst = load_instance_files(domain, problem);
            std::cout << "facts " << inst.num_facts() << "\nactions " << inst.num_actions()
                      << "\n";
            for (const auto &a : inst.actions)
                std::cout << a.name << "\n";
            std::cout << "init " << inst.fact_set_string(inst.init) << "\n";
            std::cout << "goal " << inst.fact_set_string(inst.goal) << "\n";
        } else if (*validate_cmd) {
            auto inst = load_instance_files(domain, problem);
            auto obs = parse_observations(read_file(obs_path), inst);
            auto result = validate_plan(inst, obs.steps);
            if (result.failed_index) {
                std::cout << "step " << *result.failed_index << " "
                          << inst.actions[obs.steps[*result.failed_index]].name
                          << " is not applicable\n";
                return 1;
            }
            std::cout << (result.goal_reached ? "valid plan, goal reached\n"
                                              : "executable, goal not reached\n");
            return result.goal_reached ? 0 : 1;
        } else if (*optimal_cmd) {
            auto inst = load_instance_files(domain, problem);
            auto result = bfs_optimal_plans(inst, depth);
            if (!result.length) {
                std::cout << "no plan within depth " << depth << "\n";
                return 1;
            }
            std::cout << "optimal length " << *result.length << ", " << result.plans.size()
                      << (result.truncated ? "+" : "") << " plans\n";
            for (const auto &plan : result.plans) {
                for (ActionId a : plan)
                    std::cout << inst.actions[a].name << " ";
                std::cout << "\n";
            }
        } else if (*lm_cmd) {
            auto inst = load_instance_files(domain, problem);
            auto graph = extract_landmarks(inst);
            std::cout << format_landmarks(inst, graph);
            if (!dot_out.empty())
                write_file(dot_out, format_orderings_dot(inst, graph));
        } else if (*part_cmd) {
            auto inst = load_instance_files(domain, problem);
            std::cout << format_partitions(inst, partition_facts(inst));
        } else if (*mon_cmd) {
            auto inst = load_instance_files(domain, problem);
            auto obs = parse_observations(read_file(obs_path), inst);
            MonitorConfig config;
            config.heuristic = heuristic_or_throw(heuristic);
            config.apply_mode = lenient && !strict ? ApplyMode::lenient : ApplyMode::strict;
            config.retire_landmarks = !keep_landmarks;
            auto report = monitor_plan_optimality(inst, obs, config);
            std::cout << format_report_table(inst, report) << "\n"
                      << format_report_records(inst, report);
        } else if (*ab_cmd) {
            auto inst = load_instance_files(domain, problem);
            auto obs = parse_observations(read_file(obs_path), inst);
            auto commitment = load_commitment(read_file(commitment_path), inst);
            CommitmentConfig config;
            config.monitor.heuristic = heuristic_or_throw(heuristic);
            config.monitor.apply_mode = lenient ? ApplyMode::lenient : ApplyMode::strict;
            config.terminal_clause = terminal_clause;
            auto verdict = has_abandoned(inst, commitment, obs, config);
            std::cout << format_verdict_line(verdict) << "\n";
            std::cout << "sub-optimal count " << verdict.sub_optimal_count << ", allowed "
                      << verdict.allowed << " (" << verdict.debtor_steps << " debtor steps)\n";
            std::cout << format_report_table(inst, verdict.report);
            return verdict.abandoned ? 3 : 0;
        } else if (*eval_cmd) {
            RunOptions options;
            options.jobs = jobs;
            for (const auto &h : heuristics)
                options.heuristics.push_back(heuristic_or_throw(h));
            auto report = run_manifest_file(manifest, options);
            std::cout << format_csv(report);
            if (!json_out.empty())
                write_file(json_out, format_json(report));
        } else if (*gen_cmd) {
            GenerateOptions options;
            options.seed = seed;
            auto suite = generate_suite(out_dir, options);
            std::cout << "wrote " << suite.cases << " cases to " << suite.manifest_path << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
