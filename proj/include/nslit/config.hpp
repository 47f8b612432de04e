#pragma once

#include <string>
#include <string_view>

#include "nslit/model.hpp"

namespace nslit {

/// Parses a scenario document.
///
/// Grammar, one statement per line; `#` starts a comment:
///
///   [scenario]   name = <identifier or "quoted string">
///   [params]     hbar, mass, omega                      (defaults 2, 1, 1)
///   [grid]       x_min, x_max, nx, t_max, nt
///   [[slit]]     center, sigma0, weight, phase_offset, velocity_x
///                (repeated; weight 1, phase_offset 0, velocity_x 0 by default)
///   [outputs]    products = density, current, entangling, trajectories, oracle-diff
///                trajectory_seeds = <count>, fdm_check = true|false
///
/// `key = value` pairs belong to the most recent section header. Unknown
/// sections or keys raise UnknownKey, malformed lines or values SyntaxError,
/// both with line and column. The parsed scenario is passed through
/// validate_scenario.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError if it cannot be read.
ScenarioConfig load_config(const std::string& path);

/// Canonical document for a scenario; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// SHA-256 (hex) of the canonical document.
std::string scenario_hash(const ScenarioConfig& cfg);

}  // namespace nslit
