#pragma once

#include <stdexcept>
#include <string>

#include "saba/simulator.hpp"

namespace saba {

/// Scenario file problems, annotated with the offending section/field.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario documents are JSON with sections:
//   graph       — {"edge_list": "..."} or {"generator": {"family","n","hub"?}}
//   protocol    — f, n_bar, k_max, phi_mode, safe_interval, expected_average?
//   nodes       — initial_values {label: x0}, epsilon {label: gain, "default"?}
//   adversaries — {label: {"strategy": ..., parameters}}
//   schedule    — mode, k_bar, tau_bar, seed, update_rounds?, delays?
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace saba
