#include "gospa/sensor_model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <numbers>

namespace gospa {

SensorModel::SensorModel(double fov_radius, double p_d, double clutter_rate, const Covariance& meas_cov)
    : fov_radius_(fov_radius), p_d_(p_d), clutter_rate_(clutter_rate), meas_cov_(meas_cov) {
    require(std::isfinite(fov_radius) && fov_radius > 0.0, "fov_radius must be positive");
    require(std::isfinite(p_d) && p_d >= 0.0 && p_d <= 1.0, "p_d must lie in [0, 1]");
    require(std::isfinite(clutter_rate) && clutter_rate >= 0.0, "clutter_rate must be non-negative");
    require(meas_cov.allFinite() && std::abs(meas_cov(0, 1) - meas_cov(1, 0)) <= 1e-15 * meas_cov.norm(),
            "meas_cov must be symmetric");
    Eigen::LLT<Covariance> llt(meas_cov);
    require(llt.info() == Eigen::Success && meas_cov.determinant() > 0.0, "meas_cov must be positive definite");
    chol_ = llt.matrixL();
    inverse_ = meas_cov.inverse();
    log_norm_ = -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(meas_cov.determinant());
}

SensorModel SensorModel::isotropic(double fov_radius, double p_d, double clutter_rate, double sigma) {
    require(std::isfinite(sigma) && sigma > 0.0, "measurement sigma must be positive");
    return {fov_radius, p_d, clutter_rate, Covariance::Identity() * (sigma * sigma)};
}

double SensorModel::fov_area() const { return std::numbers::pi * fov_radius_ * fov_radius_; }

double SensorModel::log_gaussian(const Point& z, const Point& x) const {
    const Point d = z - x;
    return log_norm_ - 0.5 * d.dot(inverse_ * d);
}

Point SensorModel::perturb(const Point& x, double n1, double n2) const {
    return x + chol_ * Point(n1, n2);
}

bool in_fov(const Point& x, const Action& action, const SensorModel& sensor) {
    if (!action.is_observe()) return false;
    const double r = sensor.fov_radius();
    return (x - action.center).squaredNorm() <= r * r;
}

double detection_prob(int detected, std::size_t i, const Action& action, const SensorModel& sensor,
                      const BernoulliDiracPrior& prior) {
    const bool visible = i > 0 && in_fov(prior.location(i), action, sensor);
    if (!visible) return detected ? 0.0 : 1.0;
    return detected ? sensor.p_d() : 1.0 - sensor.p_d();
}

double detection_seq_prob(const DetectionSequence& seq, std::size_t i, const std::vector<Action>& actions,
                          const SensorModel& sensor, const BernoulliDiracPrior& prior) {
    require(seq.size() == actions.size(), "detection sequence and action list lengths differ");
    if (i > prior.size()) throw Error(ErrorKind::IndexOutOfRange, "hypothesis index out of range");
    double prob = 1.0;
    for (std::size_t k = 0; k < seq.size(); ++k) prob *= detection_prob(seq[k], i, actions[k], sensor, prior);
    return prob;
}

int sample_detection(std::size_t i, const Action& action, const SensorModel& sensor, const BernoulliDiracPrior& prior,
                     RandomStream& rng) {
    const double u = rng.uniform();
    const bool visible = i > 0 && in_fov(prior.location(i), action, sensor);
    return visible && u < sensor.p_d() ? 1 : 0;
}

std::vector<Point> sample_clutter(const Action& action, const SensorModel& sensor, RandomStream& rng) {
    std::vector<Point> points;
    if (!action.is_observe() || sensor.clutter_rate() == 0.0) return points;
    // Poisson count by inversion of the CDF.
    const double mean = sensor.clutter_mean();
    // exp(-mean) must stay representable for the inversion to work.
    require(mean <= 0.5 * kMaxClutterPerScan, "expected clutter count exceeds per-scan cap", ErrorKind::Config);
    const double u = rng.uniform();
    double pmf = std::exp(-mean);
    double cdf = pmf;
    int count = 0;
    while (u >= cdf) {
        ++count;
        require(count <= kMaxClutterPerScan, "clutter count exceeds per-scan cap", ErrorKind::Config);
        pmf *= mean / count;
        cdf += pmf;
        if (pmf == 0.0 && cdf < u) break;  // numerical tail exhausted
    }
    points.reserve(count);
    const double radius = sensor.fov_radius();
    for (int k = 0; k < count; ++k) {
        const double rho = radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        points.emplace_back(action.center + rho * Point(std::cos(theta), std::sin(theta)));
    }
    return points;
}

Point sample_target_measurement(const Point& x, const SensorModel& sensor, RandomStream& rng) {
    const double n1 = rng.normal();
    const double n2 = rng.normal();
    return sensor.perturb(x, n1, n2);
}

MeasurementScan sample_scan(const BernoulliDiracPrior& prior, std::size_t i, int detected, const Action& action,
                            const SensorModel& sensor, RandomStream& rng) {
    MeasurementScan scan;
    if (detected) {
        require(i > 0 && i <= prior.size() && in_fov(prior.location(i), action, sensor),
                "a detection requires an existing target inside the FOV");
        scan.points.push_back(sample_target_measurement(prior.location(i), sensor, rng));
    }
    auto clutter = sample_clutter(action, sensor, rng);
    scan.points.insert(scan.points.end(), clutter.begin(), clutter.end());
    return scan;
}

}  // namespace gospa
