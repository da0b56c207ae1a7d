#include "gospa/scenario.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <string>

namespace gospa {

namespace {

constexpr std::uint64_t kHypothesisDraw = 0x4859;
constexpr std::uint64_t kTruthDraw = 0x5452;
constexpr std::uint64_t kMeasurement = 0x4D45;
constexpr std::uint64_t kPlanSeed = 0x504C;

void append_bytes(std::string& key, const void* data, std::size_t n) {
    key.append(static_cast<const char*>(data), n);
}

}  // namespace

void ScenarioSpec::validate() const {
    require(!mode_means.empty(), "scenario needs at least one mode");
    require(hyp_per_mode >= 1, "hyp_per_mode must be at least 1");
    require(existence_r >= 0.0 && existence_r <= 1.0, "existence_r must lie in [0, 1]");
    require(fov_radius > 0.0, "fov_radius must be positive");
    require(p_d >= 0.0 && p_d <= 1.0, "p_d must lie in [0, 1]");
    require(clutter_rate >= 0.0, "clutter_rate must be non-negative");
    require(sigma > 0.0, "sigma must be positive");
    require(c > 0.0, "c must be positive");
    Eigen::LLT<Covariance> llt(mode_cov);
    require(llt.info() == Eigen::Success, "mode_cov must be positive definite");
}

double default_sigma(double clutter_rate) { return clutter_rate > 0.0 ? 1e-2 : 1e-5; }

ScenarioSpec standard_scenario(const std::string& name, double p_d, double clutter_rate) {
    ScenarioSpec spec;
    spec.name = name;
    spec.p_d = p_d;
    spec.clutter_rate = clutter_rate;
    spec.sigma = default_sigma(clutter_rate);
    spec.existence_r = 0.8;
    if (name == "unimodal") {
        spec.mode_means = {Point(100.0, 100.0)};
        spec.mode_cov = Covariance::Identity() * 100.0;
        spec.hyp_per_mode = 100;
    } else if (name == "bimodal") {
        spec.mode_means = {Point(92.0, 100.0), Point(108.0, 100.0)};
        spec.mode_cov = Covariance::Identity() * 6.25;
        spec.hyp_per_mode = 50;
    } else if (name == "trimodal") {
        spec.mode_means = {Point(92.0, 100.0), Point(108.0, 100.0), Point(100.0, 100.0 + std::sqrt(192.0))};
        spec.mode_cov = Covariance::Identity() * 6.25;
        spec.hyp_per_mode = 33;
    } else if (name == "demo") {
        spec.mode_means = {Point(0.0, 0.0)};
        spec.mode_cov = Covariance::Identity();
        spec.hyp_per_mode = 1;
        spec.existence_r = 0.5;
        spec.p_d = p_d;
        spec.sigma = 1e-10;
        spec.action_centres = {Point(0.0, 0.0)};
    } else {
        throw Error(ErrorKind::Config, "unknown scenario '" + name + "'");
    }
    return spec;
}

std::vector<Point> hex_action_grid(const std::vector<Point>& mode_means, const Covariance& mode_cov,
                                   double fov_radius) {
    require(!mode_means.empty(), "grid needs at least one mode");
    Point centroid = Point::Zero();
    for (const auto& m : mode_means) centroid += m;
    centroid /= static_cast<double>(mode_means.size());

    const double sigma_max = std::sqrt(Eigen::SelfAdjointEigenSolver<Covariance>(mode_cov).eigenvalues().maxCoeff());
    const double reach = 2.0 * sigma_max + 0.5 * fov_radius;
    double extent = reach;
    for (const auto& m : mode_means) extent = std::max(extent, (m - centroid).norm() + reach);
    const int span = static_cast<int>(std::ceil(2.0 * extent / fov_radius)) + 1;

    const Point e1(fov_radius, 0.0);
    const Point e2(0.5 * fov_radius, 0.5 * std::sqrt(3.0) * fov_radius);
    std::vector<Point> out;
    for (int a = -span; a <= span; ++a) {
        for (int b = -span; b <= span; ++b) {
            const Point p = centroid + a * e1 + b * e2;
            for (const auto& m : mode_means) {
                if ((p - m).norm() <= reach + 1e-9) {
                    out.push_back(p);
                    break;
                }
            }
        }
    }
    // Nearest the centroid first, then counter-clockwise from east.
    auto key = [&](const Point& p) {
        const Point d = p - centroid;
        double angle = std::atan2(d.y(), d.x());
        if (angle < -1e-12) angle += 2.0 * M_PI;
        return std::make_pair(std::round(d.norm() * 1e6), std::round(angle * 1e6));
    };
    std::sort(out.begin(), out.end(), [&](const Point& l, const Point& r) { return key(l) < key(r); });
    return out;
}

Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t draw_seed) {
    spec.validate();
    const Covariance chol = Eigen::LLT<Covariance>(spec.mode_cov).matrixL();
    std::vector<Point> points;
    for (std::size_t m = 0; m < spec.mode_means.size(); ++m) {
        for (int k = 0; k < spec.hyp_per_mode; ++k) {
            if (spec.name == "demo") {
                points.push_back(spec.mode_means[m]);
                continue;
            }
            RandomStream rng(derive_seed({draw_seed, kHypothesisDraw, m, static_cast<std::uint64_t>(k)}));
            const double n1 = rng.normal();
            const double n2 = rng.normal();
            points.emplace_back(spec.mode_means[m] + chol * Point(n1, n2));
        }
    }
    const auto centres = spec.action_centres.empty()
                             ? hex_action_grid(spec.mode_means, spec.mode_cov, spec.fov_radius)
                             : spec.action_centres;
    std::vector<Action> actions{Action::no_observation()};
    for (const auto& c : centres) actions.push_back(Action::observe(c));
    GospaParams params;
    params.c = spec.c;
    return {BernoulliDiracPrior::uniform(spec.existence_r, points),
            SensorModel::isotropic(spec.fov_radius, spec.p_d, spec.clutter_rate, spec.sigma), std::move(actions),
            params};
}

int default_n_h(Policy policy, double clutter_rate) {
    if (clutter_rate == 0.0) return 1;
    return policy == Policy::Optimal ? 1 : 10;
}

// ---------------------------------------------------------------------------

void EvaluationConfig::validate() const {
    spec.validate();
    require(!policies.empty(), "at least one policy is required");
    require(horizon_T >= 1, "horizon T must be at least 1");
    require(runs >= 1, "runs must be at least 1");
    require(episodes >= 1, "episodes must be at least 1");
    require(discount >= 0.0 && discount <= 1.0, "discount must lie in [0, 1]");
    if (n_h) require(*n_h >= 1, "n_h must be at least 1");
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::vector<PolicyAggregate> aggregate(const std::vector<RunRecord>& records, const std::vector<Policy>& policies) {
    std::vector<PolicyAggregate> out;
    for (Policy p : policies) {
        std::vector<double> rmse, amms, planned;
        for (const auto& r : records) {
            if (r.policy != p) continue;
            rmse.push_back(r.rmse);
            amms.push_back(r.amms);
            planned.push_back(r.planned_cost);
        }
        PolicyAggregate agg;
        agg.policy = p;
        agg.runs = static_cast<int>(rmse.size());
        std::tie(agg.rmse_mean, agg.rmse_std) = mean_std(rmse);
        std::tie(agg.amms_mean, agg.amms_std) = mean_std(amms);
        agg.planned_mean = mean_std(planned).first;
        out.push_back(agg);
    }
    return out;
}

RunReport evaluate_policies(const EvaluationConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.scenario = cfg.spec.name;
    report.p_d = cfg.spec.p_d;
    report.clutter_rate = cfg.spec.clutter_rate;
    report.horizon_T = cfg.horizon_T;
    report.seed = cfg.seed;
    const int T = cfg.horizon_T;

    for (int run = 0; run < cfg.runs; ++run) {
        const auto run64 = static_cast<std::uint64_t>(run);
        const Scenario sc = build_scenario(cfg.spec, derive_seed({cfg.seed, run64, kHypothesisDraw}));
        const PosteriorState root = initial_posterior(sc.prior);

        for (Policy policy : cfg.policies) {
            PlanningConfig pc;
            pc.discount = cfg.discount;
            pc.action_set = sc.actions;
            pc.sampler.n_h = cfg.n_h.value_or(default_n_h(policy, cfg.spec.clutter_rate));

            RunRecord rec;
            rec.run = run;
            rec.policy = policy;
            rec.step_gospa2.assign(static_cast<std::size_t>(T), 0.0);
            rec.step_sq_error.assign(static_cast<std::size_t>(T), 0.0);
            std::map<std::string, std::size_t> plan_cache;

            for (int e = 0; e < cfg.episodes; ++e) {
                const auto e64 = static_cast<std::uint64_t>(e);
                RandomStream truth_rng(derive_seed({cfg.seed, run64, e64, kTruthDraw}));
                std::size_t truth = 0;
                if (truth_rng.uniform() < sc.prior.r) {
                    truth = 1 + std::min(sc.prior.size() - 1,
                                         static_cast<std::size_t>(truth_rng.uniform() * sc.prior.size()));
                }
                if (truth > 0) ++rec.existing_episodes;

                PosteriorState post = root;
                std::string history;
                for (int t = 1; t <= T; ++t) {
                    auto it = plan_cache.find(history);
                    if (it == plan_cache.end()) {
                        pc.horizon_T = T - t + 1;
                        pc.sampler.seed = derive_seed({cfg.seed, run64, static_cast<std::uint64_t>(t), kPlanSeed});
                        const PlanResult res = plan(policy, post, sc.sensor, sc.params, pc, t - 1);
                        if (t == 1) {
                            rec.first_action_index = res.first_action_index;
                            rec.planned_cost = res.cost;
                        }
                        it = plan_cache.emplace(history, res.first_action_index).first;
                    }
                    const std::size_t a_idx = it->second;
                    const Action& action = sc.actions[a_idx];

                    RandomStream meas_rng(derive_seed({cfg.seed, run64, e64, static_cast<std::uint64_t>(t), kMeasurement}));
                    const int detected = sample_detection(truth, action, sc.sensor, sc.prior, meas_rng);
                    const MeasurementScan scan = sample_scan(sc.prior, truth, detected, action, sc.sensor, meas_rng);
                    post = update_posterior(post, action, scan, sc.sensor);

                    const MsGospaResult mms = mms_gospa(post, sc.params);
                    const Point* truth_pt = truth > 0 ? &sc.prior.location(truth) : nullptr;
                    const Point* est_pt = mms.chosen == EstimateChoice::Estimate ? &post.estimate_e : nullptr;
                    rec.step_gospa2[t - 1] += gospa_squared_singleton(truth_pt, est_pt, sc.params.c);
                    if (truth_pt) rec.step_sq_error[t - 1] += (post.estimate_e - *truth_pt).squaredNorm();

                    append_bytes(history, &a_idx, sizeof(a_idx));
                    for (const auto& z : scan.points) append_bytes(history, z.data(), 2 * sizeof(double));
                    const char sep = '|';
                    append_bytes(history, &sep, 1);
                }
            }

            double mse = 0.0;
            for (int t = 0; t < T; ++t) {
                rec.step_gospa2[t] /= cfg.episodes;
                rec.step_sq_error[t] = rec.existing_episodes > 0 ? rec.step_sq_error[t] / rec.existing_episodes : 0.0;
                rec.amms += discount_power(cfg.discount, t) * rec.step_gospa2[t];
                mse += discount_power(cfg.discount, t) * rec.step_sq_error[t];
            }
            rec.rmse = std::sqrt(mse);
            report.records.push_back(std::move(rec));
        }
    }
    report.aggregates = aggregate(report.records, cfg.policies);
    return report;
}

// ---------------------------------------------------------------------------

DemoConfig default_demo_config() {
    DemoConfig cfg;
    for (int k = 0; k <= 100; ++k) cfg.r_grid.push_back(k / 100.0);
    for (int k = 1; k <= 200; ++k) cfg.s_grid.push_back(k / 10.0);
    return cfg;
}

Scenario demo_scenario(double r, double p_d, double c) {
    ScenarioSpec spec = standard_scenario("demo", p_d, 0.0);
    spec.existence_r = r;
    spec.c = c;
    return build_scenario(spec, 0);
}

double demo_cost_no_observation(double r, double c) { return 0.5 * c * c * std::min(r, 1.0 - r); }

double demo_cost_observe(double r, double p_d, double c) {
    const double miss = 1.0 - r * p_d;
    if (miss <= 0.0) return 0.0;
    const double r_post = r * (1.0 - p_d) / miss;
    return miss * 0.5 * c * c * std::min(r_post, 1.0 - r_post);
}

bool demo_oracle_observe(double r, double s, double p_d, double c) {
    return strictly_less(demo_cost_observe(r, p_d, c) + s, demo_cost_no_observation(r, c));
}

DemoMap demo_decision_map(const DemoConfig& cfg) {
    require(!cfg.r_grid.empty() && !cfg.s_grid.empty(), "demo grids must be non-empty");
    require(cfg.n_h >= 1 && cfg.m >= 1, "sample counts must be at least 1");
    DemoMap map;
    map.r_grid = cfg.r_grid;
    map.s_grid = cfg.s_grid;
    map.observe.assign(cfg.r_grid.size(), std::vector<bool>(cfg.s_grid.size(), false));
    double total_ms = 0.0;
    for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
        const double r = cfg.r_grid[ri];
        require(r >= 0.0 && r <= 1.0, "r must lie in [0, 1]");
        const Scenario sc = demo_scenario(r, cfg.p_d, cfg.c);
        for (std::size_t si = 0; si < cfg.s_grid.size(); ++si) {
            const double s = cfg.s_grid[si];
            require(s >= 0.0, "sensing cost must be non-negative");
            const auto start = std::chrono::steady_clock::now();
            bool observe = false;
            switch (cfg.approach) {
                case DemoApproach::Oracle:
                    observe = demo_oracle_observe(r, s, cfg.p_d, cfg.c);
                    break;
                case DemoApproach::Efficient: {
                    SamplerConfig sampler{cfg.n_h, 1, derive_seed({cfg.seed, ri, si})};
                    const double no_obs = amms_gospa_efficient(sc.prior, {sc.actions[0]}, sc.sensor, sc.params, sampler).value;
                    const double obs = amms_gospa_efficient(sc.prior, {sc.actions[1]}, sc.sensor, sc.params, sampler).value;
                    observe = strictly_less(obs + s, no_obs);
                    break;
                }
                case DemoApproach::General: {
                    SamplerConfig sampler{1, cfg.m, derive_seed({cfg.seed, ri, si})};
                    const double no_obs = amms_gospa_general(sc.prior, {sc.actions[0]}, sc.sensor, sc.params, sampler).value;
                    const double obs = amms_gospa_general(sc.prior, {sc.actions[1]}, sc.sensor, sc.params, sampler).value;
                    observe = strictly_less(obs + s, no_obs);
                    break;
                }
            }
            total_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            map.observe[ri][si] = observe;
        }
    }
    map.mean_ms = total_ms / static_cast<double>(cfg.r_grid.size() * cfg.s_grid.size());
    return map;
}

}  // namespace gospa
