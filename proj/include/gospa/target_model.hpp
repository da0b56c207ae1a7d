#pragma once

#include "gospa/prior.hpp"
#include "gospa/sensor_model.hpp"

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace gospa {

/// Immutable posterior snapshot. Existence-conditional weights are stored
/// separately from the absence probability so that r = 0 and r = 1 stay
/// well defined.
struct PosteriorState {
    double p_absent = 1.0;                               ///< p(x_0 | z, a)
    std::vector<double> w_post;                          ///< w^i for i = 1..n (0-based storage)
    Point estimate_e = Point::Zero();                    ///< sum_i w^i x_i
    std::shared_ptr<const std::vector<Point>> locations; ///< x_1..x_n

    [[nodiscard]] std::size_t size() const { return w_post.size(); }
    /// p(x_i | z, a) for i = 0..n.
    [[nodiscard]] double p_hyp(std::size_t i) const;
    [[nodiscard]] std::vector<double> p_hyp_all() const;
    /// Existence is certain and a single hypothesis carries all the weight.
    [[nodiscard]] bool collapsed() const;
};

using History = std::vector<std::pair<Action, MeasurementScan>>;

/// Unnormalised ELPF likelihood p(Z | x_i, a).
double elpf_likelihood(const MeasurementScan& scan, std::size_t i, const Action& action, const SensorModel& sensor,
                       const BernoulliDiracPrior& prior);
/// Log of elpf_likelihood computed without underflow.
double elpf_log_likelihood(const MeasurementScan& scan, const Point* x, const Action& action,
                           const SensorModel& sensor);

/// Posterior with no measurements.
PosteriorState initial_posterior(const BernoulliDiracPrior& prior);

/// Batch update over the full history.
PosteriorState update_posterior(const BernoulliDiracPrior& prior, const History& history, const SensorModel& sensor);

/// Sequential one-scan update of an existing posterior.
PosteriorState update_posterior(const PosteriorState& state, const Action& action, const MeasurementScan& scan,
                                const SensorModel& sensor);

}  // namespace gospa
