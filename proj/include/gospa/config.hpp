#pragma once

#include "gospa/scenario.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gospa {

inline constexpr int kConfigSchemaVersion = 1;

/// Everything the command-line tool can be configured with. Lengths in km,
/// covariances in km^2, clutter rate per km^2.
struct RunConfig {
    ScenarioSpec scenario = standard_scenario("bimodal", 1.0, 0.0);
    std::uint64_t draw_seed = 1;  ///< hypothesis draw for `plan`
    Policy policy = Policy::Optimal;
    int horizon_T = 2;
    double discount = 1.0;
    std::optional<int> n_h;
    double sensing_cost = 0.0;
    int optimal_horizon_cap = 3;
    std::uint64_t expansion_budget = 100'000'000;
    std::uint64_t seed = 1;
    int runs = 20;
    int episodes = 100;
    std::vector<Policy> policies{Policy::Baseline, Policy::Suboptimal, Policy::Optimal};
    std::string output_dir = ".";
};

/// Applies a config document on top of `cfg`. Unknown keys and a missing or
/// mismatched schema_version raise a Config error.
void apply_config(RunConfig& cfg, const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Planning settings for `scenario` derived from the run config.
PlanningConfig planning_config(const RunConfig& cfg, const Scenario& scenario);

}  // namespace gospa
