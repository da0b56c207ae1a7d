#include "gospa/sampler.hpp"

#include <cmath>
#include <string>

namespace gospa {

void SamplerConfig::validate() const {
    require(n_h >= 1, "n_h must be at least 1");
    require(m_general >= 1, "m_general must be at least 1");
}

Estimate summarise_slots(const std::vector<double>& totals) {
    Estimate out;
    if (totals.empty()) return out;
    const double n = static_cast<double>(totals.size());
    for (double t : totals) out.value += t;
    out.value /= n;
    if (totals.size() > 1) {
        double ss = 0.0;
        for (double t : totals) ss += (t - out.value) * (t - out.value);
        out.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

Estimate amms_gospa_efficient(const BernoulliDiracPrior& prior, const std::vector<Action>& actions,
                              const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                              bool absorb) {
    cfg.validate();
    require(!actions.empty(), "action sequence must be non-empty");
    if (static_cast<int>(actions.size()) > kEfficientHorizonCap)
        throw Error(ErrorKind::HorizonCap, "efficient sampler supports at most " +
                                               std::to_string(kEfficientHorizonCap) + " steps");
    auto post = std::make_shared<const PosteriorState>(initial_posterior(prior));
    ExpandContext ctx{&sensor, params, cfg.seed, absorb};
    std::vector<BranchNode> layer{make_root(post, cfg.n_h, params)};
    for (std::size_t t = 0; t < actions.size(); ++t) {
        std::vector<BranchNode> next;
        for (const auto& node : layer) {
            auto children = expand(node, actions[t], static_cast<int>(t + 1), ctx);
            for (auto& c : children) next.push_back(std::move(c));
        }
        layer = std::move(next);
    }
    return summarise_slots(slot_totals(layer, cfg.n_h));
}

Estimate amms_gospa_general(const BernoulliDiracPrior& prior, const std::vector<Action>& actions,
                            const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                            bool first_principles) {
    cfg.validate();
    require(!actions.empty(), "action sequence must be non-empty");
    const PosteriorState root = initial_posterior(prior);
    std::vector<double> totals(static_cast<std::size_t>(cfg.m_general), 0.0);
    for (std::size_t i = 0; i <= prior.size(); ++i) {
        const double p_i = prior_probability(prior, i);
        if (p_i == 0.0) continue;
        for (int l = 0; l < cfg.m_general; ++l) {
            PosteriorState post = root;
            for (std::size_t t = 0; t < actions.size(); ++t) {
                RandomStream rng(derive_seed({cfg.seed, i, static_cast<std::uint64_t>(l), t + 1,
                                              static_cast<std::uint64_t>(StreamTag::General)}));
                const int detected = sample_detection(i, actions[t], sensor, prior, rng);
                const MeasurementScan scan = sample_scan(prior, i, detected, actions[t], sensor, rng);
                post = update_posterior(post, actions[t], scan, sensor);
            }
            const double mms = first_principles ? mms_gospa_first_principles(post, params).mms
                                                : mms_gospa(post, params).mms;
            totals[static_cast<std::size_t>(l)] += p_i * mms;
        }
    }
    return summarise_slots(totals);
}

Estimate conditional_amms_gospa(const PosteriorState& post, int history_length, const Action& next_action,
                                const SensorModel& sensor, const GospaParams& params, const SamplerConfig& cfg,
                                std::uint64_t node_id) {
    cfg.validate();
    require(history_length >= 0, "history length must be non-negative");
    ExpandContext ctx{&sensor, params, cfg.seed, true};
    BranchNode root = make_root(std::make_shared<const PosteriorState>(post), cfg.n_h, params, node_id);
    auto children = expand(root, next_action, history_length + 1, ctx);
    return summarise_slots(slot_totals(children, cfg.n_h));
}

}  // namespace gospa
