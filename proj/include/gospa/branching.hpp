#pragma once

#include "gospa/msgospa.hpp"
#include "gospa/random.hpp"
#include "gospa/target_model.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace gospa {

/// One weighted sample path: hypothesis i (0 = no target) and sample slot j.
struct Particle {
    std::uint32_t hyp = 0;
    std::uint32_t sample = 0;
    double weight = 0.0;       ///< p(x_i) * Pr(s | x_i) / n_h
    double cond_weight = 0.0;  ///< w_i * Pr(s | x_i) / n_h, existence-conditional
};

/// A measurement-history branch. All particles in a node share the same
/// sampled scans and therefore the same posterior.
struct BranchNode {
    std::shared_ptr<const PosteriorState> post;
    std::vector<Particle> particles;
    std::uint64_t id = 0;
    double weight = 0.0;
    double cond_weight = 0.0;
    MsGospaResult mms;
    bool absorbed = false;  ///< posterior can no longer change
};

struct ExpandContext {
    const SensorModel* sensor = nullptr;
    GospaParams params;
    std::uint64_t seed = 0;
    /// Pass collapsed posteriors through unchanged instead of sampling.
    bool absorb = true;
};

/// Stream tags; kept distinct so clutter and target noise never share draws.
enum class StreamTag : std::uint64_t { Clutter = 0xC1, Target = 0x7A, General = 0x6E, Episode = 0xE9 };

/// Root node with particles for every hypothesis of `post` and n_h slots.
BranchNode make_root(std::shared_ptr<const PosteriorState> post, int n_h, const GospaParams& params,
                     std::uint64_t id = 0);

/// Children of `node` after applying `action` at time step `step`.
/// Child ids depend on the parent id, step, sample slot and hypothesis but
/// never on the action, which gives common random numbers across actions.
std::vector<BranchNode> expand(const BranchNode& node, const Action& action, int step, const ExpandContext& ctx);

/// Sum of weight * MMS-GOSPA over the nodes.
double weighted_mms(const std::vector<BranchNode>& nodes);

/// Per-slot totals n_h * sum weight * mms, used for standard errors.
std::vector<double> slot_totals(const std::vector<BranchNode>& nodes, int n_h);

/// Existence-conditional weighted squared error of X_e against x_i.
double weighted_squared_error(const std::vector<BranchNode>& nodes);

}  // namespace gospa
