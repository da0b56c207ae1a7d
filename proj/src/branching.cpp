#include "gospa/branching.hpp"

#include <algorithm>
#include <map>

namespace gospa {

namespace {

constexpr std::uint64_t kPassThrough = 0x9A55;

BranchNode make_node(std::shared_ptr<const PosteriorState> post, std::vector<Particle> particles, std::uint64_t id,
                     const GospaParams& params) {
    BranchNode node;
    node.post = std::move(post);
    node.particles = std::move(particles);
    node.id = id;
    for (const auto& p : node.particles) {
        node.weight += p.weight;
        node.cond_weight += p.cond_weight;
    }
    node.mms = mms_gospa(*node.post, params);
    node.absorbed = node.post->collapsed();
    return node;
}

}  // namespace

BranchNode make_root(std::shared_ptr<const PosteriorState> post, int n_h, const GospaParams& params,
                     std::uint64_t id) {
    require(n_h >= 1, "n_h must be at least 1");
    std::vector<Particle> particles;
    const double inv = 1.0 / n_h;
    for (int j = 0; j < n_h; ++j) {
        for (std::size_t i = 0; i <= post->size(); ++i) {
            const double weight = post->p_hyp(i) * inv;
            const double cond = i == 0 ? 0.0 : post->w_post[i - 1] * inv;
            if (weight == 0.0) continue;
            particles.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), weight, cond});
        }
    }
    return make_node(std::move(post), std::move(particles), id, params);
}

std::vector<BranchNode> expand(const BranchNode& node, const Action& action, int step, const ExpandContext& ctx) {
    const SensorModel& sensor = *ctx.sensor;
    std::vector<BranchNode> children;
    if (!action.is_observe() || (ctx.absorb && node.absorbed)) {
        BranchNode child = node;
        child.id = derive_seed({node.id, static_cast<std::uint64_t>(step), kPassThrough});
        children.push_back(std::move(child));
        return children;
    }

    const auto& locs = *node.post->locations;
    const double p_d = sensor.p_d();
    std::map<std::uint32_t, std::vector<const Particle*>> groups;
    for (const auto& p : node.particles) groups[p.sample].push_back(&p);

    for (const auto& [j, members] : groups) {
        const auto step64 = static_cast<std::uint64_t>(step);
        RandomStream clutter_rng(
            derive_seed({ctx.seed, node.id, j, step64, static_cast<std::uint64_t>(StreamTag::Clutter)}));
        MeasurementScan clutter{sample_clutter(action, sensor, clutter_rng)};

        std::vector<Particle> missed;
        for (const Particle* p : members) {
            const bool visible = p->hyp > 0 && in_fov(locs[p->hyp - 1], action, sensor);
            const double pr_miss = visible ? 1.0 - p_d : 1.0;
            if (pr_miss > 0.0) missed.push_back({p->hyp, p->sample, p->weight * pr_miss, p->cond_weight * pr_miss});
        }
        if (!missed.empty()) {
            auto post = std::make_shared<const PosteriorState>(update_posterior(*node.post, action, clutter, sensor));
            children.push_back(make_node(std::move(post), std::move(missed), derive_seed({node.id, step64, j, 0}),
                                         ctx.params));
        }

        if (p_d == 0.0) continue;
        for (const Particle* p : members) {
            if (p->hyp == 0 || !in_fov(locs[p->hyp - 1], action, sensor)) continue;
            RandomStream target_rng(derive_seed(
                {ctx.seed, node.id, j, step64, p->hyp, static_cast<std::uint64_t>(StreamTag::Target)}));
            MeasurementScan scan;
            scan.points.reserve(clutter.points.size() + 1);
            scan.points.push_back(sample_target_measurement(locs[p->hyp - 1], sensor, target_rng));
            scan.points.insert(scan.points.end(), clutter.points.begin(), clutter.points.end());
            auto post = std::make_shared<const PosteriorState>(update_posterior(*node.post, action, scan, sensor));
            std::vector<Particle> hit{{p->hyp, p->sample, p->weight * p_d, p->cond_weight * p_d}};
            children.push_back(make_node(std::move(post), std::move(hit),
                                         derive_seed({node.id, step64, j, p->hyp, 1}), ctx.params));
        }
    }
    return children;
}

double weighted_mms(const std::vector<BranchNode>& nodes) {
    double total = 0.0;
    for (const auto& n : nodes) total += n.weight * n.mms.mms;
    return total;
}

std::vector<double> slot_totals(const std::vector<BranchNode>& nodes, int n_h) {
    std::vector<double> totals(static_cast<std::size_t>(n_h), 0.0);
    for (const auto& n : nodes)
        for (const auto& p : n.particles) totals[p.sample] += n_h * p.weight * n.mms.mms;
    return totals;
}

double weighted_squared_error(const std::vector<BranchNode>& nodes) {
    double total = 0.0;
    for (const auto& n : nodes) {
        const auto& locs = *n.post->locations;
        for (const auto& p : n.particles) {
            if (p.hyp == 0 || p.cond_weight == 0.0) continue;
            total += p.cond_weight * (n.post->estimate_e - locs[p.hyp - 1]).squaredNorm();
        }
    }
    return total;
}

}  // namespace gospa
