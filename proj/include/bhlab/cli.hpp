#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bhlab/numeric.hpp"

namespace bhlab {

// Experiment runner behind the CLI. Throws ConfigError (exit 2), BudgetError
// (exit 3); invariant violations surface as std::logic_error (exit 4).
void run_experiment(const nlohmann::json& config, const std::string& out_dir);

// Validates, fills defaults, and returns the resolved config that gets
// written next to the outputs.
nlohmann::json resolve_config(const nlohmann::json& config);

struct FixtureEntry {
    std::string name;
    std::string kind; // "int", "rational", "float"
    std::string value;
    double tol = 0;
};

// The slow brute-force oracles, frozen once by `bootstrap-oracles` and
// recomputed exactly by `golden-check`.
std::vector<FixtureEntry> compute_fixtures(int threads);

void write_fixtures(const std::string& path, const std::vector<FixtureEntry>& entries);

struct GoldenReport {
    bool pass = false;
    int checked = 0;
    std::vector<std::string> failures;
};

GoldenReport golden_check(const std::string& fixture_path, int threads);

std::string default_fixture_path();

} // namespace bhlab
