#pragma once

#include "gospa/scenario.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gospa {

/// Shortest text that parses back to the same double.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// r, s, observe (1/0), action label.
std::string demo_csv(const DemoMap& map);
/// Decision map: blue = no observation, yellow = observe.
std::string demo_svg(const DemoMap& map, const std::string& title);

std::string action_label(const Action& action);
nlohmann::json action_json(const Action& action);
nlohmann::json plan_json(const PlanResult& result, const Scenario& scenario, const std::string& scenario_name);
/// Hypothesis scatter with the planned spotlights, one colour per step.
std::string plan_svg(const PlanResult& result, const Scenario& scenario, const std::string& title);

/// One row per policy with aggregate statistics.
std::string evaluation_csv(const RunReport& report);
/// One row per (run, policy) with per-step realised costs.
std::string runs_csv(const RunReport& report);
/// Parses runs_csv output back into records.
std::vector<RunRecord> parse_runs_csv(const std::string& text);

}  // namespace gospa
