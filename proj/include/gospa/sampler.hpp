#pragma once

#include "gospa/branching.hpp"

#include <cstdint>
#include <vector>

namespace gospa {

struct SamplerConfig {
    int n_h = 1;          ///< samples per (hypothesis, detection sequence)
    int m_general = 100;  ///< samples per hypothesis for the general approach
    std::uint64_t seed = 1;

    void validate() const;
};

/// Monte Carlo estimate in km^2 with its standard error (0 when a single
/// sample slot is used).
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Longest action sequence the detection-sequence enumerator accepts.
inline constexpr int kEfficientHorizonCap = 4;

/// Mean and standard error of per-slot totals.
Estimate summarise_slots(const std::vector<double>& totals);

/// AMMS-GOSPA by enumerating detection sequences with n_h samples each.
Estimate amms_gospa_efficient(const BernoulliDiracPrior& prior, const std::vector<Action>& actions,
                              const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                              bool absorb = true);

/// AMMS-GOSPA by sampling m full measurement histories per hypothesis.
/// With `first_principles` every MMS-GOSPA goes through gospa() instead of
/// the closed form.
Estimate amms_gospa_general(const BernoulliDiracPrior& prior, const std::vector<Action>& actions,
                            const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                            bool first_principles = false);

/// One-step-ahead AMMS-GOSPA conditional on the current posterior, where
/// the posterior summarises `history_length` earlier steps.
Estimate conditional_amms_gospa(const PosteriorState& post, int history_length, const Action& next_action,
                                const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                                std::uint64_t node_id = 0);

}  // namespace gospa
