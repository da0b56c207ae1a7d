#include "gospa/target_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gospa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

double log_sum_exp(const std::vector<double>& terms) {
    double m = kNegInf;
    for (double t : terms) m = std::max(m, t);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

/// Turn accumulated log masses into a posterior. `log_w` holds the
/// existence-conditional log weights; the existence mass is
/// log_exist_scale + LSE(log_w). If every conditional weight vanished the
/// previous weights are kept, since they are irrelevant once p_absent = 1.
PosteriorState finish(double log_absent, double log_exist_scale, const std::vector<double>& log_w,
                      const std::vector<double>& fallback_w, std::shared_ptr<const std::vector<Point>> locations) {
    const double lse = log_sum_exp(log_w);
    const double log_exist = log_exist_scale + lse;
    if (log_exist == kNegInf && log_absent == kNegInf)
        throw Error(ErrorKind::DegeneratePosterior, "all hypothesis likelihoods are zero");

    PosteriorState out;
    out.locations = std::move(locations);
    if (lse == kNegInf) {
        out.w_post = fallback_w;
    } else {
        out.w_post.resize(log_w.size());
        for (std::size_t k = 0; k < log_w.size(); ++k) out.w_post[k] = std::exp(log_w[k] - lse);
    }
    if (log_exist == kNegInf) out.p_absent = 1.0;
    else if (log_absent == kNegInf) out.p_absent = 0.0;
    else out.p_absent = 1.0 / (1.0 + std::exp(log_exist - log_absent));

    out.estimate_e = Point::Zero();
    for (std::size_t k = 0; k < out.w_post.size(); ++k) out.estimate_e += out.w_post[k] * (*out.locations)[k];
    return out;
}

std::shared_ptr<const std::vector<Point>> locations_of(const BernoulliDiracPrior& prior) {
    auto locs = std::make_shared<std::vector<Point>>();
    locs->reserve(prior.size());
    for (const auto& h : prior.hypotheses) locs->push_back(h.location);
    return locs;
}

}  // namespace

double PosteriorState::p_hyp(std::size_t i) const {
    if (i > size()) throw Error(ErrorKind::IndexOutOfRange, "hypothesis index out of range");
    return i == 0 ? p_absent : (1.0 - p_absent) * w_post[i - 1];
}

std::vector<double> PosteriorState::p_hyp_all() const {
    std::vector<double> out(size() + 1);
    for (std::size_t i = 0; i <= size(); ++i) out[i] = p_hyp(i);
    return out;
}

bool PosteriorState::collapsed() const {
    if (p_absent != 0.0) return false;
    return std::count_if(w_post.begin(), w_post.end(), [](double w) { return w > 0.0; }) == 1;
}

double elpf_log_likelihood(const MeasurementScan& scan, const Point* x, const Action& action,
                           const SensorModel& sensor) {
    const bool visible = x != nullptr && in_fov(*x, action, sensor);
    if (scan.points.empty()) return visible ? safe_log(1.0 - sensor.p_d()) : 0.0;
    const double log_clutter = safe_log(sensor.clutter_rate());
    if (!visible) return log_clutter;
    std::vector<double> terms;
    terms.reserve(scan.points.size() + 1);
    terms.push_back(safe_log(sensor.clutter_rate() * (1.0 - sensor.p_d())));
    const double log_pd = safe_log(sensor.p_d());
    for (const auto& z : scan.points) terms.push_back(log_pd + sensor.log_gaussian(z, *x));
    return log_sum_exp(terms);
}

double elpf_likelihood(const MeasurementScan& scan, std::size_t i, const Action& action, const SensorModel& sensor,
                       const BernoulliDiracPrior& prior) {
    if (i > prior.size()) throw Error(ErrorKind::IndexOutOfRange, "hypothesis index out of range");
    return std::exp(elpf_log_likelihood(scan, i == 0 ? nullptr : &prior.location(i), action, sensor));
}

PosteriorState initial_posterior(const BernoulliDiracPrior& prior) {
    return update_posterior(prior, History{}, SensorModel::isotropic(1.0, 0.0, 0.0, 1.0));
}

PosteriorState update_posterior(const BernoulliDiracPrior& prior, const History& history, const SensorModel& sensor) {
    prior.validate();
    auto locations = locations_of(prior);
    const std::size_t n = prior.size();
    double log_absent = safe_log(1.0 - prior.r);
    std::vector<double> weights(n);
    std::vector<double> log_w(n);
    for (std::size_t k = 0; k < n; ++k) {
        weights[k] = prior.hypotheses[k].weight;
        log_w[k] = std::log(weights[k]);
    }
    for (const auto& [action, scan] : history) {
        log_absent += elpf_log_likelihood(scan, nullptr, action, sensor);
        for (std::size_t k = 0; k < n; ++k) log_w[k] += elpf_log_likelihood(scan, &(*locations)[k], action, sensor);
    }
    return finish(log_absent, safe_log(prior.r), log_w, weights, std::move(locations));
}

PosteriorState update_posterior(const PosteriorState& state, const Action& action, const MeasurementScan& scan,
                                const SensorModel& sensor) {
    const std::size_t n = state.size();
    const auto& locs = *state.locations;
    const double log_absent = safe_log(state.p_absent) + elpf_log_likelihood(scan, nullptr, action, sensor);
    std::vector<double> log_w(n);
    for (std::size_t k = 0; k < n; ++k)
        log_w[k] = safe_log(state.w_post[k]) + elpf_log_likelihood(scan, &locs[k], action, sensor);
    return finish(log_absent, safe_log(1.0 - state.p_absent), log_w, state.w_post, state.locations);
}

}  // namespace gospa
