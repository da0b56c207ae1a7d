#pragma once

#include "gospa/planners.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gospa {

/// Scenario recipe: Gaussian modes from which the Dirac hypotheses are drawn.
struct ScenarioSpec {
    std::string name = "custom";
    std::vector<Point> mode_means;    ///< km
    Covariance mode_cov = Covariance::Identity();  ///< km^2, shared by all modes
    int hyp_per_mode = 1;
    double existence_r = 0.8;
    double fov_radius = 10.0;         ///< km
    double p_d = 1.0;
    double clutter_rate = 0.0;        ///< per km^2
    double sigma = 1e-5;              ///< km
    double c = 10.0;                  ///< km
    /// Spotlight centres; empty means the generated hexagonal grid.
    std::vector<Point> action_centres;

    void validate() const;
};

struct Scenario {
    BernoulliDiracPrior prior;
    SensorModel sensor;
    std::vector<Action> actions;  ///< NoObservation first
    GospaParams params;
};

/// Measurement noise used for the clutter-free and cluttered settings.
double default_sigma(double clutter_rate);

/// unimodal, bimodal, trimodal or demo with the standard settings.
ScenarioSpec standard_scenario(const std::string& name, double p_d, double clutter_rate);

/// Hexagonal lattice (spacing = fov_radius) anchored at the centroid of the
/// mode means, keeping centres within 2 sigma_max + fov_radius / 2 of a mode.
std::vector<Point> hex_action_grid(const std::vector<Point>& mode_means, const Covariance& mode_cov,
                                   double fov_radius);

/// Draws the hypotheses with `draw_seed`; the grid is independent of the draw.
Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t draw_seed);

/// Samples per hypothesis for a policy in a given clutter setting.
int default_n_h(Policy policy, double clutter_rate);

// ---------------------------------------------------------------------------

struct EvaluationConfig {
    ScenarioSpec spec;
    std::vector<Policy> policies{Policy::Baseline, Policy::Suboptimal, Policy::Optimal};
    int horizon_T = 2;
    int runs = 20;
    int episodes = 100;  ///< simulated ground truths per run
    double discount = 1.0;
    std::optional<int> n_h;  ///< overrides default_n_h when set
    std::uint64_t seed = 1;

    void validate() const;
};

struct RunRecord {
    int run = 0;
    Policy policy = Policy::Myopic;
    std::size_t first_action_index = 0;
    double planned_cost = 0.0;  ///< planner objective at the first step
    std::vector<double> step_gospa2;  ///< mean realised GOSPA^2 per step, km^2
    std::vector<double> step_sq_error;  ///< mean squared localisation error per step, km^2
    int existing_episodes = 0;
    double amms = 0.0;  ///< discounted sum of step_gospa2
    double rmse = 0.0;  ///< sqrt of discounted sum of step_sq_error
};

struct PolicyAggregate {
    Policy policy = Policy::Myopic;
    double rmse_mean = 0.0;
    double rmse_std = 0.0;
    double amms_mean = 0.0;
    double amms_std = 0.0;
    double planned_mean = 0.0;
    int runs = 0;
};

struct RunReport {
    std::string scenario;
    double p_d = 0.0;
    double clutter_rate = 0.0;
    int horizon_T = 0;
    std::uint64_t seed = 0;
    std::vector<RunRecord> records;
    std::vector<PolicyAggregate> aggregates;
};

/// Mean and sample standard deviation (0 for a single value).
std::pair<double, double> mean_std(const std::vector<double>& values);

/// Aggregates recomputed from the per-run records.
std::vector<PolicyAggregate> aggregate(const std::vector<RunRecord>& records, const std::vector<Policy>& policies);

RunReport evaluate_policies(const EvaluationConfig& cfg);

// ---------------------------------------------------------------------------

enum class DemoApproach { Efficient, General, Oracle };

struct DemoConfig {
    std::vector<double> r_grid;
    std::vector<double> s_grid;
    double p_d = 0.6;
    double c = 10.0;
    DemoApproach approach = DemoApproach::Efficient;
    int n_h = 1;
    int m = 100;
    std::uint64_t seed = 1;
};

struct DemoMap {
    std::vector<double> r_grid;
    std::vector<double> s_grid;
    std::vector<std::vector<bool>> observe;  ///< [r index][s index]
    double mean_ms = 0.0;  ///< mean wall time per cell optimisation
};

/// r in {0, 0.01, ..., 1} and s in {0.1, 0.2, ..., 20}.
DemoConfig default_demo_config();

/// Single-hypothesis setup of the sensing-cost demonstration.
Scenario demo_scenario(double r, double p_d, double c);

/// Closed-form expected costs of not observing and observing (without s).
double demo_cost_no_observation(double r, double c);
double demo_cost_observe(double r, double p_d, double c);
bool demo_oracle_observe(double r, double s, double p_d, double c);

DemoMap demo_decision_map(const DemoConfig& cfg);

}  // namespace gospa
