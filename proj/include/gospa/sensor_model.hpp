#pragma once

#include "gospa/prior.hpp"
#include "gospa/random.hpp"
#include "gospa/types.hpp"

#include <cstddef>
#include <vector>

namespace gospa {

/// Spotlight pointing action, or the choice not to look at all.
struct Action {
    enum class Kind { NoObservation, Observe };

    Kind kind = Kind::NoObservation;
    Point center = Point::Zero();  ///< km, meaningful for Observe only

    static Action observe(const Point& center) { return {Kind::Observe, center}; }
    static Action no_observation() { return {}; }
    [[nodiscard]] bool is_observe() const { return kind == Kind::Observe; }
};

struct MeasurementScan {
    std::vector<Point> points;  ///< km
};

/// Per-step detection flags s_1..s_t, each 0 or 1.
using DetectionSequence = std::vector<int>;

/// Hard limit on false alarms per scan; exceeded only by pathological rates.
inline constexpr int kMaxClutterPerScan = 1000;

class SensorModel {
public:
    /// fov_radius in km, clutter_rate per km^2, meas_cov in km^2.
    SensorModel(double fov_radius, double p_d, double clutter_rate, const Covariance& meas_cov);

    /// Isotropic noise with standard deviation sigma (km).
    static SensorModel isotropic(double fov_radius, double p_d, double clutter_rate, double sigma);

    [[nodiscard]] double fov_radius() const { return fov_radius_; }
    [[nodiscard]] double p_d() const { return p_d_; }
    [[nodiscard]] double clutter_rate() const { return clutter_rate_; }
    [[nodiscard]] const Covariance& meas_cov() const { return meas_cov_; }
    [[nodiscard]] double fov_area() const;
    /// Expected false alarms per Observe scan.
    [[nodiscard]] double clutter_mean() const { return clutter_rate_ * fov_area(); }

    /// log N(z; x, Sigma).
    [[nodiscard]] double log_gaussian(const Point& z, const Point& x) const;
    /// x + L*n with L the Cholesky factor of Sigma.
    [[nodiscard]] Point perturb(const Point& x, double n1, double n2) const;

private:
    double fov_radius_;
    double p_d_;
    double clutter_rate_;
    Covariance meas_cov_;
    Covariance inverse_;
    Covariance chol_;
    double log_norm_;
};

/// Boundary inclusive; NoObservation sees nothing.
bool in_fov(const Point& x, const Action& action, const SensorModel& sensor);

/// Pr(s_1:t | x_i, a_1:t).
double detection_seq_prob(const DetectionSequence& seq, std::size_t i, const std::vector<Action>& actions,
                          const SensorModel& sensor, const BernoulliDiracPrior& prior);

/// Single-step factor of detection_seq_prob.
double detection_prob(int detected, std::size_t i, const Action& action, const SensorModel& sensor,
                      const BernoulliDiracPrior& prior);

/// Bernoulli detection draw; always consumes one uniform so that streams
/// stay aligned across actions.
int sample_detection(std::size_t i, const Action& action, const SensorModel& sensor, const BernoulliDiracPrior& prior,
                     RandomStream& rng);

/// Poisson number of false alarms, uniform over the FOV disc.
std::vector<Point> sample_clutter(const Action& action, const SensorModel& sensor, RandomStream& rng);

/// One draw from N(x, Sigma).
Point sample_target_measurement(const Point& x, const SensorModel& sensor, RandomStream& rng);

MeasurementScan sample_scan(const BernoulliDiracPrior& prior, std::size_t i, int detected, const Action& action,
                            const SensorModel& sensor, RandomStream& rng);

}  // namespace gospa
