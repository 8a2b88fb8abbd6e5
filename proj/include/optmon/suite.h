#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace optmon {

struct GenerateOptions {
    unsigned seed = 1;
    std::size_t problems_per_domain = 4;
    std::size_t depth_bound = 16;
    std::size_t max_plans = 5000;
    std::vector<double> thresholds = {0.0, 0.05, 0.10};
};

struct GeneratedSuite {
    std::string manifest_path;
    std::size_t cases = 0;
    std::size_t optimality_cases = 0;
    std::size_t abandonment_cases = 0;
};

// Writes domains, problems, observation traces, commitments and a manifest
// for small Logistics, Grid and Ferry tasks. Step labels are the
// non-contributing observations against the best-matching optimal plan
// found by exhaustive BFS; a trace counts as abandoned when more than
// θ·|O| of its steps are non-contributing.
GeneratedSuite generate_suite(const std::string &out_dir, const GenerateOptions &options = {});

std::string logistics_domain_text();
std::string grid_domain_text();
std::string ferry_domain_text();

}  // namespace optmon
