// Command-line front end: demo decision maps, single plans, and Monte Carlo
// evaluations. Exit codes: 0 ok, 1 domain or I/O error, 2 usage error.

#include "gospa/config.hpp"
#include "gospa/report.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

using namespace gospa;

std::string in_dir(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir + "'");
}

struct ScenarioFlags {
    std::string config;
    std::string scenario;
    double p_d = 1.0;
    double lfa = 0.0;
    CLI::Option* scenario_opt = nullptr;
    CLI::Option* pd_opt = nullptr;
    CLI::Option* lfa_opt = nullptr;

    void add(CLI::App* app) {
        app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
        scenario_opt = app->add_option("--scenario", scenario, "unimodal | bimodal | trimodal")
                           ->check(CLI::IsMember({"unimodal", "bimodal", "trimodal"}));
        pd_opt = app->add_option("--pd", p_d, "probability of detection")->check(CLI::Range(0.0, 1.0));
        lfa_opt = app->add_option("--lfa", lfa, "false alarm rate per km^2")->check(CLI::NonNegativeNumber);
    }

    RunConfig resolve() const {
        RunConfig cfg = config.empty() ? RunConfig{} : load_config(config);
        if (scenario_opt->count() || pd_opt->count() || lfa_opt->count()) {
            const std::string name = scenario_opt->count() ? scenario : cfg.scenario.name;
            const double pd = pd_opt->count() ? p_d : cfg.scenario.p_d;
            const double rate = lfa_opt->count() ? lfa : cfg.scenario.clutter_rate;
            if (name == "custom") {
                cfg.scenario.p_d = pd;
                cfg.scenario.clutter_rate = rate;
            } else {
                auto centres = cfg.scenario.action_centres;
                cfg.scenario = standard_scenario(name, pd, rate);
                cfg.scenario.action_centres = centres;
            }
        }
        return cfg;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"GOSPA-based sensor management planner"};
    app.require_subcommand(1);

    // demo ------------------------------------------------------------------
    auto* demo = app.add_subcommand("demo", "decision map over existence probability and sensing cost");
    std::string approach = "efficient";
    int n_h = 1, m = 100;
    double demo_pd = 0.6, demo_c = 10.0;
    std::uint64_t demo_seed = 1;
    std::string demo_dir = ".";
    demo->add_option("--approach", approach, "efficient | general | oracle")
        ->check(CLI::IsMember({"efficient", "general", "oracle"}));
    demo->add_option("--nh", n_h, "samples per detection sequence")->check(CLI::PositiveNumber);
    demo->add_option("--m", m, "samples per hypothesis (general)")->check(CLI::PositiveNumber);
    demo->add_option("--pd", demo_pd, "probability of detection")->check(CLI::Range(0.0, 1.0));
    demo->add_option("--c", demo_c, "GOSPA cutoff, km")->check(CLI::PositiveNumber);
    demo->add_option("--seed", demo_seed, "random seed");
    demo->add_option("--out-dir", demo_dir, "output directory");

    // plan ------------------------------------------------------------------
    auto* plan_cmd = app.add_subcommand("plan", "plan an action sequence for one scenario draw");
    ScenarioFlags plan_flags;
    plan_flags.add(plan_cmd);
    std::string policy_name;
    int plan_T = 0, plan_nh = 0;
    std::uint64_t plan_seed = 0, draw_seed = 0;
    std::string plan_dir;
    auto* policy_opt = plan_cmd->add_option("--policy", policy_name, "myopic | suboptimal | optimal | baseline")
                           ->check(CLI::IsMember({"myopic", "suboptimal", "optimal", "baseline"}));
    auto* plan_T_opt = plan_cmd->add_option("--T", plan_T, "horizon")->check(CLI::PositiveNumber);
    auto* plan_nh_opt = plan_cmd->add_option("--nh", plan_nh, "samples per detection sequence")->check(CLI::PositiveNumber);
    auto* plan_seed_opt = plan_cmd->add_option("--seed", plan_seed, "sampling seed");
    auto* draw_seed_opt = plan_cmd->add_option("--draw-seed", draw_seed, "hypothesis draw seed");
    auto* plan_dir_opt = plan_cmd->add_option("--out-dir", plan_dir, "output directory");

    // evaluate --------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("evaluate", "Monte Carlo evaluation of policies");
    ScenarioFlags eval_flags;
    eval_flags.add(eval_cmd);
    int eval_T = 0, runs = 0, episodes = 0, eval_nh = 0;
    std::uint64_t eval_seed = 0;
    std::vector<std::string> policy_names;
    std::string eval_dir;
    auto* eval_T_opt = eval_cmd->add_option("--T", eval_T, "horizon")->check(CLI::PositiveNumber);
    auto* runs_opt = eval_cmd->add_option("--runs", runs, "independent hypothesis draws")->check(CLI::PositiveNumber);
    auto* episodes_opt = eval_cmd->add_option("--episodes", episodes, "simulated truths per run")->check(CLI::PositiveNumber);
    auto* eval_nh_opt = eval_cmd->add_option("--nh", eval_nh, "override samples per detection sequence")->check(CLI::PositiveNumber);
    auto* eval_seed_opt = eval_cmd->add_option("--seed", eval_seed, "random seed");
    auto* policies_opt = eval_cmd->add_option("--policies", policy_names, "comma-separated policies to evaluate")
                             ->delimiter(',')
                             ->check(CLI::IsMember({"myopic", "suboptimal", "optimal", "baseline"}));
    auto* eval_dir_opt = eval_cmd->add_option("--out-dir", eval_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (demo->parsed()) {
        DemoConfig dc = default_demo_config();
        dc.p_d = demo_pd;
        dc.c = demo_c;
        dc.n_h = n_h;
        dc.m = m;
        dc.seed = demo_seed;
        dc.approach = approach == "efficient" ? DemoApproach::Efficient
                      : approach == "general" ? DemoApproach::General
                                              : DemoApproach::Oracle;
        const DemoMap map = demo_decision_map(dc);
        DemoConfig oc = dc;
        oc.approach = DemoApproach::Oracle;
        const DemoMap oracle = demo_decision_map(oc);
        std::size_t agree = 0, total = 0;
        for (std::size_t i = 0; i < map.r_grid.size(); ++i)
            for (std::size_t j = 0; j < map.s_grid.size(); ++j, ++total) agree += map.observe[i][j] == oracle.observe[i][j];

        std::string tag = approach;
        if (approach == "efficient") tag += "_nh" + std::to_string(n_h);
        if (approach == "general") tag += "_m" + std::to_string(m);
        ensure_dir(demo_dir);
        write_text_file(in_dir(demo_dir, "demo_" + tag + ".csv"), demo_csv(map));
        write_text_file(in_dir(demo_dir, "demo_" + tag + ".svg"), demo_svg(map, "optimal action (" + tag + ")"));
        std::printf("approach: %s\n", tag.c_str());
        std::printf("cells: %zu, agreement with closed form: %zu (%.2f%%)\n", total, agree, 100.0 * agree / total);
        std::printf("mean optimisation time: %.6f ms\n", map.mean_ms);
        return 0;
    }

    if (plan_cmd->parsed()) {
        RunConfig cfg = plan_flags.resolve();
        if (policy_opt->count()) cfg.policy = policy_from_string(policy_name);
        if (plan_T_opt->count()) cfg.horizon_T = plan_T;
        if (plan_nh_opt->count()) cfg.n_h = plan_nh;
        if (plan_seed_opt->count()) cfg.seed = plan_seed;
        if (draw_seed_opt->count()) cfg.draw_seed = draw_seed;
        if (plan_dir_opt->count()) cfg.output_dir = plan_dir;

        const Scenario sc = build_scenario(cfg.scenario, cfg.draw_seed);
        const PlanningConfig pc = planning_config(cfg, sc);
        const PlanResult res = plan(cfg.policy, initial_posterior(sc.prior), sc.sensor, sc.params, pc);
        const std::string stem = "plan_" + cfg.scenario.name + "_" + to_string(cfg.policy) + "_T" +
                                 std::to_string(cfg.horizon_T);
        ensure_dir(cfg.output_dir);
        write_text_file(in_dir(cfg.output_dir, stem + ".json"), plan_json(res, sc, cfg.scenario.name).dump(2) + "\n");
        write_text_file(in_dir(cfg.output_dir, stem + ".svg"),
                        plan_svg(res, sc, cfg.scenario.name + " / " + to_string(cfg.policy)));
        std::printf("policy: %s, first action: %s\n", to_string(cfg.policy).c_str(),
                    action_label(res.first_action).c_str());
        for (std::size_t t = 0; t < res.actions.size(); ++t)
            std::printf("  step %zu: %s\n", t + 1, action_label(res.actions[t]).c_str());
        std::printf("cost: %.6f km^2 (AMMS-GOSPA %.6f km^2)\n", res.cost, res.amms_gospa);
        std::printf("wall time: %.1f ms\n", res.diagnostics.wall_ms);
        return 0;
    }

    RunConfig cfg = eval_flags.resolve();
    if (eval_T_opt->count()) cfg.horizon_T = eval_T;
    if (runs_opt->count()) cfg.runs = runs;
    if (episodes_opt->count()) cfg.episodes = episodes;
    if (eval_nh_opt->count()) cfg.n_h = eval_nh;
    if (eval_seed_opt->count()) cfg.seed = eval_seed;
    if (eval_dir_opt->count()) cfg.output_dir = eval_dir;
    if (policies_opt->count()) {
        cfg.policies.clear();
        for (const auto& p : policy_names) cfg.policies.push_back(policy_from_string(p));
    }
    EvaluationConfig ec;
    ec.spec = cfg.scenario;
    ec.policies = cfg.policies;
    ec.horizon_T = cfg.horizon_T;
    ec.runs = cfg.runs;
    ec.episodes = cfg.episodes;
    ec.discount = cfg.discount;
    ec.n_h = cfg.n_h;
    ec.seed = cfg.seed;
    const RunReport report = evaluate_policies(ec);
    ensure_dir(cfg.output_dir);
    const std::string stem = "evaluate_" + cfg.scenario.name + "_T" + std::to_string(cfg.horizon_T);
    write_text_file(in_dir(cfg.output_dir, stem + ".csv"), evaluation_csv(report));
    write_text_file(in_dir(cfg.output_dir, stem + "_runs.csv"), runs_csv(report));
    std::cout << evaluation_csv(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gospa::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
