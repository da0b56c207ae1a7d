#include "gospa/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gospa {

namespace {

constexpr const char* kRunsHeader =
    "scenario,P_d,lambda_FA,T,policy,run,seed,first_action,planned_cost_km2,amms_km2,rmse_km,"
    "existing_episodes,step_gospa2_km2,step_sq_error_km2";

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string demo_csv(const DemoMap& map) {
    std::ostringstream out;
    out << "r,s,observe,action\n";
    for (std::size_t i = 0; i < map.r_grid.size(); ++i)
        for (std::size_t j = 0; j < map.s_grid.size(); ++j)
            out << format_double(map.r_grid[i]) << ',' << format_double(map.s_grid[j]) << ','
                << (map.observe[i][j] ? 1 : 0) << ',' << (map.observe[i][j] ? "observe" : "no_observation") << '\n';
    return out.str();
}

namespace {

constexpr const char* kBlue = "#2c3e91";
constexpr const char* kYellow = "#f5d130";
const char* const kStepColours[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd"};

}  // namespace

std::string demo_svg(const DemoMap& map, const std::string& title) {
    const double cell = 4.0;
    const double left = 60.0, top = 40.0;
    const double width = cell * static_cast<double>(map.s_grid.size());
    const double height = cell * static_cast<double>(map.r_grid.size());
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 20 << "\" height=\""
        << top + height + 50 << "\">\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
    // r increases upwards, s to the right.
    for (std::size_t i = 0; i < map.r_grid.size(); ++i) {
        for (std::size_t j = 0; j < map.s_grid.size(); ++j) {
            const double x = left + cell * static_cast<double>(j);
            const double y = top + height - cell * static_cast<double>(i + 1);
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << (map.observe[i][j] ? kYellow : kBlue) << "\"/>\n";
        }
    }
    out << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 30
        << "\" font-size=\"12\" text-anchor=\"middle\">sensing cost s (km^2)</text>\n";
    out << "<text x=\"16\" y=\"" << top + height / 2
        << "\" font-size=\"12\" transform=\"rotate(-90 16 " << top + height / 2
        << ")\" text-anchor=\"middle\">existence probability r</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string action_label(const Action& action) {
    if (!action.is_observe()) return "no_observation";
    return "observe(" + format_double(action.center.x()) + " " + format_double(action.center.y()) + ")";
}

nlohmann::json action_json(const Action& action) {
    if (!action.is_observe()) return {{"kind", "no_observation"}};
    return {{"kind", "observe"}, {"center_km", {action.center.x(), action.center.y()}}};
}

nlohmann::json plan_json(const PlanResult& result, const Scenario& scenario, const std::string& scenario_name) {
    nlohmann::json j;
    j["scenario"] = scenario_name;
    j["policy"] = to_string(result.policy);
    j["first_action_index"] = result.first_action_index;
    j["first_action"] = action_json(result.first_action);
    j["action_indices"] = result.action_indices;
    nlohmann::json seq = nlohmann::json::array();
    for (const auto& a : result.actions) seq.push_back(action_json(a));
    j["actions"] = seq;
    j["cost_km2"] = result.cost;
    j["cost_std_error_km2"] = result.cost_std_error;
    j["per_step_costs_km2"] = result.per_step_costs;
    j["amms_gospa_km2"] = result.amms_gospa;
    j["sqrt_amms_gospa_km"] = std::sqrt(result.amms_gospa);
    if (result.mse) j["mse_km2"] = *result.mse;
    if (result.rmse) j["rmse_km"] = *result.rmse;
    if (!result.second_step_actions.empty()) j["second_step_action_mass"] = result.second_step_actions;
    j["diagnostics"] = {{"expansions", result.diagnostics.expansions},
                        {"branches", result.diagnostics.branches}};
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& a : scenario.actions) grid.push_back(action_json(a));
    j["action_set"] = grid;
    return j;
}

std::string plan_svg(const PlanResult& result, const Scenario& scenario, const std::string& title) {
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    auto grow = [&](const Point& p, double pad) {
        min_x = std::min(min_x, p.x() - pad);
        max_x = std::max(max_x, p.x() + pad);
        min_y = std::min(min_y, p.y() - pad);
        max_y = std::max(max_y, p.y() + pad);
    };
    for (const auto& h : scenario.prior.hypotheses) grow(h.location, 2.0);
    for (const auto& a : scenario.actions)
        if (a.is_observe()) grow(a.center, scenario.sensor.fov_radius());
    const double scale = 600.0 / std::max(max_x - min_x, max_y - min_y);
    auto sx = [&](double x) { return 40.0 + (x - min_x) * scale; };
    auto sy = [&](double y) { return 40.0 + (max_y - y) * scale; };
    const double w = 80.0 + (max_x - min_x) * scale;
    const double h = 80.0 + (max_y - min_y) * scale;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<text x=\"40\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
    for (const auto& a : scenario.actions) {
        if (!a.is_observe()) continue;
        out << "<circle cx=\"" << sx(a.center.x()) << "\" cy=\"" << sy(a.center.y()) << "\" r=\""
            << scenario.sensor.fov_radius() * scale << "\" fill=\"none\" stroke=\"#e8d98a\" stroke-width=\"0.8\"/>\n";
    }
    for (const auto& hyp : scenario.prior.hypotheses)
        out << "<circle cx=\"" << sx(hyp.location.x()) << "\" cy=\"" << sy(hyp.location.y())
            << "\" r=\"2\" fill=\"#555555\"/>\n";
    for (std::size_t t = 0; t < result.actions.size(); ++t) {
        const Action& a = result.actions[t];
        if (!a.is_observe()) continue;
        const char* colour = kStepColours[t % 4];
        out << "<circle cx=\"" << sx(a.center.x()) << "\" cy=\"" << sy(a.center.y()) << "\" r=\""
            << scenario.sensor.fov_radius() * scale << "\" fill=\"none\" stroke=\"" << colour
            << "\" stroke-width=\"2.5\"/>\n";
        out << "<text x=\"" << sx(a.center.x()) + 4 << "\" y=\"" << sy(a.center.y()) - 4 << "\" font-size=\"12\" fill=\""
            << colour << "\">t=" << t + 1 << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string evaluation_csv(const RunReport& report) {
    std::ostringstream out;
    out << "scenario,P_d,lambda_FA,T,policy,rmse_mean_km,rmse_std_km,amms_mean_km2,amms_std_km2,runs,seed,"
           "sqrt_amms_mean_km\n";
    for (const auto& a : report.aggregates) {
        out << report.scenario << ',' << format_double(report.p_d) << ',' << format_double(report.clutter_rate) << ','
            << report.horizon_T << ',' << to_string(a.policy) << ',' << format_double(a.rmse_mean) << ','
            << format_double(a.rmse_std) << ',' << format_double(a.amms_mean) << ',' << format_double(a.amms_std)
            << ',' << a.runs << ',' << report.seed << ',' << format_double(std::sqrt(a.amms_mean)) << '\n';
    }
    return out.str();
}

std::string runs_csv(const RunReport& report) {
    std::ostringstream out;
    out << kRunsHeader << '\n';
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + format_double(v[k]);
        return s;
    };
    for (const auto& r : report.records) {
        out << report.scenario << ',' << format_double(report.p_d) << ',' << format_double(report.clutter_rate) << ','
            << report.horizon_T << ',' << to_string(r.policy) << ',' << r.run << ',' << report.seed << ','
            << r.first_action_index << ',' << format_double(r.planned_cost) << ',' << format_double(r.amms) << ','
            << format_double(r.rmse) << ',' << r.existing_episodes << ',' << join(r.step_gospa2) << ','
            << join(r.step_sq_error) << '\n';
    }
    return out.str();
}

std::vector<RunRecord> parse_runs_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != kRunsHeader) throw Error(ErrorKind::Io, "unexpected runs CSV header");
    std::vector<RunRecord> out;
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream ss(s);
        while (std::getline(ss, cur, sep)) parts.push_back(cur);
        if (!s.empty() && s.back() == sep) parts.emplace_back();
        return parts;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 14) throw Error(ErrorKind::Io, "malformed runs CSV row");
        RunRecord r;
        r.policy = policy_from_string(f[4]);
        r.run = std::stoi(f[5]);
        r.first_action_index = std::stoul(f[7]);
        r.planned_cost = std::stod(f[8]);
        r.amms = std::stod(f[9]);
        r.rmse = std::stod(f[10]);
        r.existing_episodes = std::stoi(f[11]);
        for (const auto& v : split(f[12], ';')) r.step_gospa2.push_back(std::stod(v));
        for (const auto& v : split(f[13], ';')) r.step_sq_error.push_back(std::stod(v));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace gospa
