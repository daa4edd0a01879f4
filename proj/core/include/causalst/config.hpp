#pragma once

#include <string>

#include "causalst/correlations.hpp"
#include "causalst/scenarios.hpp"

namespace causalst {

/// Parses a scenario config document (JSON): node list with roles and
/// alphabet sizes, edge list as name pairs, mechanisms as explicit tables
/// or named primitives (ID, NOT, XOR, AND), exogenous pmfs as rational
/// strings, embeddings (minkowski11 coordinates or poset elements plus
/// covering relations) and the designated roles. Throws ConfigError with a
/// path to the offending field.
ScenarioSpec parse_scenario_config(const std::string& json_text);

/// Serializes a scenario to the config format; mechanisms are written as
/// explicit tables so a re-import reproduces the model exactly.
std::string scenario_config_to_json(const ScenarioSpec& spec);

/// 4x4 rational behaviour table, rows indexed by the settings (a,c), cells
/// by the outcomes (x,z).
BellBehavior parse_behavior_json(const std::string& json_text);
std::string behavior_to_json(const BellBehavior& behavior);

}  // namespace causalst
