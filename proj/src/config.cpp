#include "gospa/config.hpp"

#include "gospa/report.hpp"

#include <set>

namespace gospa {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorKind::Config, where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw Error(ErrorKind::Config, "unknown key '" + key + "' in " + where);
    }
}

Point to_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::Config, where + " must be a [x, y] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void apply_scenario(ScenarioSpec& spec, const json& s) {
    check_keys(s, {"name", "p_d", "clutter_rate_per_km2", "sigma_km", "existence_r", "fov_radius_km", "c_km",
                   "mode_means_km", "mode_cov_km2", "hyp_per_mode", "action_centres_km"},
               "scenario");
    if (s.contains("name")) {
        const auto name = s.at("name").get<std::string>();
        if (name != "custom") {
            const double p_d = s.value("p_d", spec.p_d);
            const double rate = s.value("clutter_rate_per_km2", spec.clutter_rate);
            spec = standard_scenario(name, p_d, rate);
        } else {
            spec.name = name;
        }
    }
    read(s, "p_d", spec.p_d);
    read(s, "clutter_rate_per_km2", spec.clutter_rate);
    read(s, "sigma_km", spec.sigma);
    read(s, "existence_r", spec.existence_r);
    read(s, "fov_radius_km", spec.fov_radius);
    read(s, "c_km", spec.c);
    read(s, "hyp_per_mode", spec.hyp_per_mode);
    if (s.contains("mode_means_km")) {
        spec.mode_means.clear();
        for (const auto& m : s.at("mode_means_km")) spec.mode_means.push_back(to_point(m, "mode_means_km"));
    }
    if (s.contains("mode_cov_km2")) {
        const auto& m = s.at("mode_cov_km2");
        if (!m.is_array() || m.size() != 2) throw Error(ErrorKind::Config, "mode_cov_km2 must be 2x2");
        const Point r0 = to_point(m[0], "mode_cov_km2");
        const Point r1 = to_point(m[1], "mode_cov_km2");
        spec.mode_cov << r0.x(), r0.y(), r1.x(), r1.y();
    }
    if (s.contains("action_centres_km")) {
        spec.action_centres.clear();
        for (const auto& c : s.at("action_centres_km")) spec.action_centres.push_back(to_point(c, "action_centres_km"));
    }
}

}  // namespace

void apply_config(RunConfig& cfg, const json& doc) {
    check_keys(doc, {"schema_version", "scenario", "planning", "evaluation", "output"}, "config");
    if (!doc.contains("schema_version") || doc.at("schema_version") != kConfigSchemaVersion)
        throw Error(ErrorKind::Config, "config schema_version must be " + std::to_string(kConfigSchemaVersion));
    try {
        if (doc.contains("scenario")) apply_scenario(cfg.scenario, doc.at("scenario"));
        if (doc.contains("planning")) {
            const auto& p = doc.at("planning");
            check_keys(p, {"policy", "horizon_T", "discount", "n_h", "sensing_cost", "optimal_horizon_cap",
                           "expansion_budget", "seed", "draw_seed"},
                       "planning");
            if (p.contains("policy")) cfg.policy = policy_from_string(p.at("policy").get<std::string>());
            read(p, "horizon_T", cfg.horizon_T);
            read(p, "discount", cfg.discount);
            if (p.contains("n_h")) cfg.n_h = p.at("n_h").get<int>();
            read(p, "sensing_cost", cfg.sensing_cost);
            read(p, "optimal_horizon_cap", cfg.optimal_horizon_cap);
            read(p, "expansion_budget", cfg.expansion_budget);
            read(p, "seed", cfg.seed);
            read(p, "draw_seed", cfg.draw_seed);
        }
        if (doc.contains("evaluation")) {
            const auto& e = doc.at("evaluation");
            check_keys(e, {"runs", "episodes", "policies"}, "evaluation");
            read(e, "runs", cfg.runs);
            read(e, "episodes", cfg.episodes);
            if (e.contains("policies")) {
                cfg.policies.clear();
                for (const auto& name : e.at("policies")) cfg.policies.push_back(policy_from_string(name));
            }
        }
        if (doc.contains("output")) {
            const auto& o = doc.at("output");
            check_keys(o, {"dir"}, "output");
            read(o, "dir", cfg.output_dir);
        }
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::Config, std::string("invalid config value: ") + ex.what());
    }
    cfg.scenario.validate();
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::Config, "cannot parse config '" + path + "': " + ex.what());
    }
    apply_config(cfg, doc);
    return cfg;
}

PlanningConfig planning_config(const RunConfig& cfg, const Scenario& scenario) {
    PlanningConfig pc;
    pc.horizon_T = cfg.horizon_T;
    pc.discount = cfg.discount;
    pc.action_set = scenario.actions;
    pc.sampler.n_h = cfg.n_h.value_or(default_n_h(cfg.policy, cfg.scenario.clutter_rate));
    pc.sampler.seed = cfg.seed;
    pc.sensing_cost = cfg.sensing_cost;
    pc.optimal_horizon_cap = cfg.optimal_horizon_cap;
    pc.expansion_budget = cfg.expansion_budget;
    return pc;
}

}  // namespace gospa
