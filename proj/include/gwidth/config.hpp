#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "gwidth/body.hpp"
#include "gwidth/decomposition.hpp"
#include "gwidth/fixed_points.hpp"

namespace gw {

// Everything an experiment needs; a config plus the code version determines
// every output byte. Unknown keys are rejected.
struct ExperimentConfig {
  std::optional<nlohmann::json> body;  // body descriptor
  std::uint64_t seed = 1;
  std::size_t samples = 20000;
  Vec sigmas{0.1, 1.0};
  QuadratureOptions quadrature;
  SolverOptions solver;
  std::string out;  // output prefix; empty = stdout
  std::map<std::string, bool> checks;
  nlohmann::json params = nlohmann::json::object();  // subcommand-specific

  ConvexBody make_body() const;
  bool check_enabled(const std::string& name) const;
  nlohmann::json to_json() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
};

// Sigma grid from an array or {"log": {"min", "max", "count"}}.
Vec parse_sigma_grid(const nlohmann::json& j);
Vec log_grid(double lo, double hi, int count);

}  // namespace gw
