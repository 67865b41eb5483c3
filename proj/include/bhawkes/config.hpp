#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhawkes/params.hpp"

namespace bhawkes {

/// Everything one CLI invocation needs. Stored as a JSON object whose keys
/// are the field names below; command-line flags override file values.
struct ExperimentConfig {
  ModelParams params = kPaperExample;
  std::optional<ModelParams> minus_params; // sell side for `price`; defaults to params

  std::uint64_t seed = 20180701;
  double horizon = 100.0;
  bool stationary = false;
  double burn_in = -1.0;  // negative: 10 / q_minus
  double lookback = 0.0;  // cluster immigrants before 0

  double t_max = 50.0;
  std::size_t grid_points = 500; // intervals on [0, t_max] or [0, horizon]

  std::size_t n_paths = 1000;
  std::vector<long> scales{10, 50, 200};
  std::vector<double> t_grid{1.0};

  std::string price_kind = "midprice";
  double alpha = 1.0;
  double s0 = 1.0;
  double sigma = 0.1;

  double bin_width = -1.0; // negative: 50 / q_minus

  std::string out_dir;
  std::string output;

  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

/// Missing keys keep their defaults; unknown keys and type errors throw
/// ConfigError naming the offending field path.
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& cfg, const std::string& path);

/// Throws ConfigError (field path in the message) or the parameter errors.
void validate_config(const ExperimentConfig& cfg);

} // namespace bhawkes
