#pragma once

#include "gospa/sampler.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gospa {

enum class Policy { Myopic, Suboptimal, Optimal, Baseline };

std::string to_string(Policy policy);
Policy policy_from_string(const std::string& name);

struct PlanningConfig {
    int horizon_T = 1;
    double discount = 1.0;            ///< lambda in [0, 1]; 0^0 is taken as 1
    std::vector<Action> action_set;   ///< index 0 is conventionally NoObservation
    SamplerConfig sampler;
    double sensing_cost = 0.0;        ///< added per Observe action
    int optimal_horizon_cap = 3;
    std::uint64_t expansion_budget = 100'000'000;  ///< Bellman node expansions
    std::uint64_t tuple_budget = 10'000'000;       ///< open-loop action tuples
    bool absorb = true;

    void validate() const;
};

struct PlanDiagnostics {
    std::uint64_t expansions = 0;  ///< node expansions performed
    std::uint64_t branches = 0;    ///< child branches created
    double wall_ms = 0.0;
};

struct PlanResult {
    Policy policy = Policy::Myopic;
    std::size_t first_action_index = 0;
    Action first_action;
    /// Open-loop tuple, or for the Bellman planner the first action followed
    /// by the continuation along the heaviest non-absorbed branch.
    std::vector<std::size_t> action_indices;
    std::vector<Action> actions;
    double cost = 0.0;                 ///< objective value, km^2 (plus sensing)
    double cost_std_error = 0.0;
    std::vector<double> per_step_costs;  ///< undiscounted; discounted sum == cost
    double amms_gospa = 0.0;           ///< discounted AMMS-GOSPA, km^2
    std::optional<double> mse;         ///< discounted existence-conditional MSE, km^2
    std::optional<double> rmse;        ///< sqrt(mse), km
    /// Bellman only: probability mass of each second-step action.
    std::vector<double> second_step_actions;
    PlanDiagnostics diagnostics;
};

/// Plans from an arbitrary posterior with `steps_done` steps already taken.
PlanResult plan(Policy policy, const PosteriorState& root, const SensorModel& sensor, const GospaParams& params,
                const PlanningConfig& cfg, int steps_done = 0, std::uint64_t root_id = 0);

PlanResult plan_myopic(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                       const PlanningConfig& cfg);
PlanResult plan_suboptimal(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                           const PlanningConfig& cfg);
PlanResult plan_optimal(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                        const PlanningConfig& cfg);
PlanResult plan_baseline_mse(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                             const PlanningConfig& cfg);

/// lambda^k with 0^0 = 1.
double discount_power(double lambda, int k);

}  // namespace gospa
