#include "gospa/planners.hpp"

#include "gospa/parallel.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>

namespace gospa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Counters {
    std::atomic<std::uint64_t> expansions{0};
    std::atomic<std::uint64_t> branches{0};
};

std::vector<BranchNode> expand_layer(const std::vector<BranchNode>& layer, const Action& action, int step,
                                     const ExpandContext& ctx, Counters& counters) {
    std::vector<BranchNode> next;
    for (const auto& node : layer) {
        auto children = expand(node, action, step, ctx);
        counters.expansions.fetch_add(1, std::memory_order_relaxed);
        counters.branches.fetch_add(children.size(), std::memory_order_relaxed);
        for (auto& c : children) next.push_back(std::move(c));
    }
    return next;
}

double sensing(const PlanningConfig& cfg, const Action& a) { return a.is_observe() ? cfg.sensing_cost : 0.0; }

// ---------------------------------------------------------------------------
// Open-loop tuple search shared by the suboptimal and baseline planners.

struct TupleBest {
    double cost = kInf;
    std::vector<std::size_t> tuple;
    std::vector<double> steps;
};

class OpenLoopSearch {
public:
    OpenLoopSearch(const PlanningConfig& cfg, const ExpandContext& ctx, bool mse_objective, int steps_done,
                   int horizon, Counters& counters)
        : cfg_(cfg), ctx_(ctx), mse_(mse_objective), steps_done_(steps_done), horizon_(horizon),
          counters_(counters) {}

    TupleBest run_from(const BranchNode& root, std::size_t first) {
        tuple_.clear();
        steps_.clear();
        descend({root}, 0, 0.0, first);
        return best_;
    }

private:
    double stage(const std::vector<BranchNode>& layer, const Action& a) const {
        return mse_ ? weighted_squared_error(layer) : weighted_mms(layer) + sensing(cfg_, a);
    }

    void descend(const std::vector<BranchNode>& layer, int depth, double acc, std::size_t only) {
        if (depth == horizon_) {
            if (strictly_less(acc, best_.cost)) best_ = {acc, tuple_, steps_};
            return;
        }
        // Costs are non-negative, so a prefix that cannot win is pruned.
        if (!strictly_less(acc, best_.cost)) return;
        const std::size_t lo = depth == 0 ? only : 0;
        const std::size_t hi = depth == 0 ? only + 1 : cfg_.action_set.size();
        for (std::size_t a = lo; a < hi; ++a) {
            const Action& action = cfg_.action_set[a];
            auto next = expand_layer(layer, action, steps_done_ + depth + 1, ctx_, counters_);
            const double c = stage(next, action);
            tuple_.push_back(a);
            steps_.push_back(c);
            descend(next, depth + 1, acc + discount_power(cfg_.discount, depth) * c, only);
            tuple_.pop_back();
            steps_.pop_back();
        }
    }

    const PlanningConfig& cfg_;
    ExpandContext ctx_;
    bool mse_;
    int steps_done_;
    int horizon_;
    Counters& counters_;
    TupleBest best_;
    std::vector<std::size_t> tuple_;
    std::vector<double> steps_;
};

// ---------------------------------------------------------------------------
// Bellman recursion with the conditional AMMS-GOSPA at every decision node.

struct BellmanValue {
    double value = kInf;
    std::vector<double> steps;          ///< expected undiscounted cost per step
    std::vector<double> mms_steps;      ///< same without sensing charges
    std::size_t choice = 0;
    std::vector<std::size_t> path;      ///< choice followed by heaviest continuation
    std::vector<double> second_step;    ///< filled at the top level only
};

class Bellman {
public:
    Bellman(const PlanningConfig& cfg, const ExpandContext& ctx, Counters& counters)
        : cfg_(cfg), ctx_(ctx), counters_(counters) {}

    BellmanValue evaluate(const BranchNode& node, std::size_t a, int step, int remaining, bool histogram) {
        const Action& action = cfg_.action_set[a];
        auto children = expand(node, action, step, ctx_);
        const auto done = counters_.expansions.fetch_add(1, std::memory_order_relaxed) + 1;
        counters_.branches.fetch_add(children.size(), std::memory_order_relaxed);
        if (done > cfg_.expansion_budget)
            throw Error(ErrorKind::BudgetExceeded, "Bellman recursion exceeded the expansion budget");

        BellmanValue out;
        out.choice = a;
        out.steps.assign(static_cast<std::size_t>(remaining), 0.0);
        out.mms_steps.assign(static_cast<std::size_t>(remaining), 0.0);
        out.mms_steps[0] = weighted_mms(children);
        out.steps[0] = out.mms_steps[0] + sensing(cfg_, action);
        if (histogram) out.second_step.assign(cfg_.action_set.size(), 0.0);
        out.path = {a};
        double heaviest = -1.0;
        if (remaining > 1) {
            for (const auto& child : children) {
                if (ctx_.absorb && child.absorbed) {
                    // A collapsed posterior has zero MMS-GOSPA from here on and
                    // the cheapest follow-up is the lowest-index action.
                    if (histogram) out.second_step[0] += child.weight;
                    continue;
                }
                BranchNode reseeded = make_root(child.post, cfg_.sampler.n_h, ctx_.params, child.id);
                BellmanValue sub = solve(reseeded, step + 1, remaining - 1);
                for (std::size_t k = 0; k < sub.steps.size(); ++k) {
                    out.steps[k + 1] += child.weight * sub.steps[k];
                    out.mms_steps[k + 1] += child.weight * sub.mms_steps[k];
                }
                if (histogram) out.second_step[sub.choice] += child.weight;
                if (child.weight > heaviest) {
                    heaviest = child.weight;
                    out.path = {a};
                    out.path.insert(out.path.end(), sub.path.begin(), sub.path.end());
                }
            }
        }
        out.value = 0.0;
        for (std::size_t k = 0; k < out.steps.size(); ++k)
            out.value += discount_power(cfg_.discount, static_cast<int>(k)) * out.steps[k];
        return out;
    }

    BellmanValue solve(const BranchNode& node, int step, int remaining) {
        BellmanValue best;
        for (std::size_t a = 0; a < cfg_.action_set.size(); ++a) {
            BellmanValue v = evaluate(node, a, step, remaining, false);
            if (strictly_less(v.value, best.value)) best = std::move(v);
        }
        return best;
    }

private:
    const PlanningConfig& cfg_;
    ExpandContext ctx_;
    Counters& counters_;
};

/// Re-walks an open-loop tuple to report AMMS-GOSPA with its standard error
/// and, from the existence-conditional root, the localisation MSE.
void score_tuple(PlanResult& out, const BranchNode& root, const BranchNode& cond_root, const PlanningConfig& cfg,
                 const ExpandContext& ctx, int steps_done, Counters& counters) {
    std::vector<BranchNode> layer{root};
    std::vector<BranchNode> cond_layer{cond_root};
    std::vector<double> slots(static_cast<std::size_t>(cfg.sampler.n_h), 0.0);
    double amms = 0.0;
    double mse = 0.0;
    for (std::size_t t = 0; t < out.action_indices.size(); ++t) {
        const Action& action = cfg.action_set[out.action_indices[t]];
        const int step = steps_done + static_cast<int>(t) + 1;
        layer = expand_layer(layer, action, step, ctx, counters);
        cond_layer = expand_layer(cond_layer, action, step, ctx, counters);
        const double lam = discount_power(cfg.discount, static_cast<int>(t));
        amms += lam * weighted_mms(layer);
        mse += lam * weighted_squared_error(cond_layer);
        const auto totals = slot_totals(layer, cfg.sampler.n_h);
        for (std::size_t j = 0; j < slots.size(); ++j) slots[j] += lam * totals[j];
    }
    out.amms_gospa = amms;
    out.mse = mse;
    out.rmse = std::sqrt(mse);
    out.cost_std_error = summarise_slots(slots).std_error;
}

/// Same posterior with existence made certain; the existence-conditional
/// weights, and hence X_e, are unaffected by this.
PosteriorState existence_conditional(const PosteriorState& post) {
    PosteriorState out = post;
    out.p_absent = 0.0;
    return out;
}

}  // namespace

std::string to_string(Policy policy) {
    switch (policy) {
        case Policy::Myopic: return "myopic";
        case Policy::Suboptimal: return "suboptimal";
        case Policy::Optimal: return "optimal";
        case Policy::Baseline: return "baseline";
    }
    return "unknown";
}

Policy policy_from_string(const std::string& name) {
    if (name == "myopic") return Policy::Myopic;
    if (name == "suboptimal") return Policy::Suboptimal;
    if (name == "optimal") return Policy::Optimal;
    if (name == "baseline") return Policy::Baseline;
    throw Error(ErrorKind::Config, "unknown policy '" + name + "'");
}

double discount_power(double lambda, int k) { return k == 0 ? 1.0 : std::pow(lambda, k); }

void PlanningConfig::validate() const {
    require(horizon_T >= 1, "horizon T must be at least 1");
    require(std::isfinite(discount) && discount >= 0.0 && discount <= 1.0, "discount must lie in [0, 1]");
    require(!action_set.empty(), "action set must be non-empty");
    bool has_no_obs = false;
    for (const auto& a : action_set) has_no_obs = has_no_obs || !a.is_observe();
    require(has_no_obs, "action set must include NoObservation");
    require(std::isfinite(sensing_cost) && sensing_cost >= 0.0, "sensing cost must be non-negative");
    require(optimal_horizon_cap >= 1, "optimal horizon cap must be at least 1");
    sampler.validate();
}

PlanResult plan(Policy policy, const PosteriorState& root_post, const SensorModel& sensor, const GospaParams& params,
                const PlanningConfig& cfg, int steps_done, std::uint64_t root_id) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const int horizon = policy == Policy::Myopic ? 1 : cfg.horizon_T;
    const std::size_t n_a = cfg.action_set.size();

    if (policy == Policy::Optimal) {
        if (horizon > cfg.optimal_horizon_cap)
            throw Error(ErrorKind::HorizonCap, "optimal planner horizon " + std::to_string(horizon) +
                                                   " exceeds cap " + std::to_string(cfg.optimal_horizon_cap));
    } else {
        if (horizon > kEfficientHorizonCap)
            throw Error(ErrorKind::HorizonCap, "open-loop planner horizon " + std::to_string(horizon) +
                                                   " exceeds cap " + std::to_string(kEfficientHorizonCap));
        const double tuples = std::pow(static_cast<double>(n_a), horizon);
        if (tuples > static_cast<double>(cfg.tuple_budget))
            throw Error(ErrorKind::BudgetExceeded, "action tuple count exceeds budget");
    }

    ExpandContext ctx{&sensor, params, cfg.sampler.seed, cfg.absorb};
    auto shared_root = std::make_shared<const PosteriorState>(root_post);
    const BranchNode root = make_root(shared_root, cfg.sampler.n_h, params, root_id);
    const BranchNode cond_root = make_root(std::make_shared<const PosteriorState>(existence_conditional(root_post)),
                                           cfg.sampler.n_h, params, root_id);
    Counters counters;

    PlanResult out;
    out.policy = policy;
    if (policy == Policy::Optimal) {
        std::vector<BellmanValue> per_action(n_a);
        parallel_for(n_a, [&](std::size_t a) {
            Bellman bellman(cfg, ctx, counters);
            per_action[a] = bellman.evaluate(root, a, steps_done + 1, horizon, false);
        });
        std::size_t best = 0;
        for (std::size_t a = 1; a < n_a; ++a)
            if (strictly_less(per_action[a].value, per_action[best].value)) best = a;
        Bellman bellman(cfg, ctx, counters);
        BellmanValue chosen = bellman.evaluate(root, best, steps_done + 1, horizon, true);
        out.cost = chosen.value;
        out.per_step_costs = chosen.steps;
        out.action_indices = chosen.path;
        out.second_step_actions = horizon > 1 ? chosen.second_step : std::vector<double>{};
        out.amms_gospa = 0.0;
        for (std::size_t k = 0; k < chosen.mms_steps.size(); ++k)
            out.amms_gospa += discount_power(cfg.discount, static_cast<int>(k)) * chosen.mms_steps[k];
    } else {
        const bool mse = policy == Policy::Baseline;
        std::vector<TupleBest> per_action(n_a);
        parallel_for(n_a, [&](std::size_t a) {
            OpenLoopSearch search(cfg, ctx, mse, steps_done, horizon, counters);
            per_action[a] = search.run_from(mse ? cond_root : root, a);
        });
        std::size_t best = 0;
        for (std::size_t a = 1; a < n_a; ++a)
            if (strictly_less(per_action[a].cost, per_action[best].cost)) best = a;
        out.cost = per_action[best].cost;
        out.per_step_costs = per_action[best].steps;
        out.action_indices = per_action[best].tuple;
        score_tuple(out, root, cond_root, cfg, ctx, steps_done, counters);
        if (mse) out.cost_std_error = 0.0;
    }

    out.first_action_index = out.action_indices.front();
    out.first_action = cfg.action_set[out.first_action_index];
    for (std::size_t idx : out.action_indices) out.actions.push_back(cfg.action_set[idx]);
    out.diagnostics.expansions = counters.expansions.load();
    out.diagnostics.branches = counters.branches.load();
    out.diagnostics.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

PlanResult plan_myopic(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                       const PlanningConfig& cfg) {
    return plan(Policy::Myopic, initial_posterior(prior), sensor, params, cfg);
}

PlanResult plan_suboptimal(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                           const PlanningConfig& cfg) {
    return plan(Policy::Suboptimal, initial_posterior(prior), sensor, params, cfg);
}

PlanResult plan_optimal(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                        const PlanningConfig& cfg) {
    return plan(Policy::Optimal, initial_posterior(prior), sensor, params, cfg);
}

PlanResult plan_baseline_mse(const BernoulliDiracPrior& prior, const SensorModel& sensor, const GospaParams& params,
                             const PlanningConfig& cfg) {
    return plan(Policy::Baseline, initial_posterior(prior), sensor, params, cfg);
}

}  // namespace gospa
