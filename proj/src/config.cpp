#include "bhawkes/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "bhawkes/errors.hpp"
#include "bhawkes/io.hpp"

namespace bhawkes {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["params"] = to_json(cfg.params);
  if (cfg.minus_params) j["minus_params"] = to_json(*cfg.minus_params);
  j["seed"] = cfg.seed;
  j["horizon"] = cfg.horizon;
  j["stationary"] = cfg.stationary;
  j["burn_in"] = cfg.burn_in;
  j["lookback"] = cfg.lookback;
  j["t_max"] = cfg.t_max;
  j["grid_points"] = cfg.grid_points;
  j["n_paths"] = cfg.n_paths;
  j["scales"] = cfg.scales;
  j["t_grid"] = cfg.t_grid;
  j["price_kind"] = cfg.price_kind;
  j["alpha"] = cfg.alpha;
  j["s0"] = cfg.s0;
  j["sigma"] = cfg.sigma;
  j["bin_width"] = cfg.bin_width;
  j["out_dir"] = cfg.out_dir;
  j["output"] = cfg.output;
  return j;
}

namespace {

template <class T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

ModelParams read_params(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  static const std::set<std::string> known{"lambda0", "a", "b", "c", "d"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError(path + "." + key + ": unknown field");
  ModelParams p = kPaperExample;
  for (const char* key : {"lambda0", "a", "b", "c", "d"}) {
    if (!j.contains(key)) continue;
    if (!j.at(key).is_number()) throw ConfigError(path + "." + key + ": expected a number");
    const double v = j.at(key).get<double>();
    if (std::string(key) == "lambda0") p.lambda0 = v;
    if (std::string(key) == "a") p.a = v;
    if (std::string(key) == "b") p.b = v;
    if (std::string(key) == "c") p.c = v;
    if (std::string(key) == "d") p.d = v;
  }
  return p;
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known{
      "params", "minus_params", "seed",     "horizon", "stationary", "burn_in", "lookback",
      "t_max",  "grid_points",  "n_paths",  "scales",  "t_grid",     "price_kind", "alpha",
      "s0",     "sigma",        "bin_width", "out_dir", "output"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError(key + ": unknown field");

  ExperimentConfig cfg;
  if (j.contains("params")) cfg.params = read_params(j.at("params"), "params");
  if (j.contains("minus_params") && !j.at("minus_params").is_null())
    cfg.minus_params = read_params(j.at("minus_params"), "minus_params");
  read_field(j, "seed", cfg.seed);
  read_field(j, "horizon", cfg.horizon);
  read_field(j, "stationary", cfg.stationary);
  read_field(j, "burn_in", cfg.burn_in);
  read_field(j, "lookback", cfg.lookback);
  read_field(j, "t_max", cfg.t_max);
  read_field(j, "grid_points", cfg.grid_points);
  read_field(j, "n_paths", cfg.n_paths);
  read_field(j, "scales", cfg.scales);
  read_field(j, "t_grid", cfg.t_grid);
  read_field(j, "price_kind", cfg.price_kind);
  read_field(j, "alpha", cfg.alpha);
  read_field(j, "s0", cfg.s0);
  read_field(j, "sigma", cfg.sigma);
  read_field(j, "bin_width", cfg.bin_width);
  read_field(j, "out_dir", cfg.out_dir);
  read_field(j, "output", cfg.output);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
  return config_from_json(j);
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file '" + path + "'");
  out << to_json(cfg).dump(2) << '\n';
}

void validate_config(const ExperimentConfig& cfg) {
  validate_params(cfg.params);
  if (cfg.minus_params) validate_params(*cfg.minus_params);
  if (!(cfg.horizon >= 0.0) || !std::isfinite(cfg.horizon)) throw ConfigError("horizon: must be >= 0");
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max)) throw ConfigError("t_max: must be > 0");
  if (cfg.grid_points < 1) throw ConfigError("grid_points: must be >= 1");
  if (cfg.lookback < 0.0) throw ConfigError("lookback: must be >= 0");
  for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
    if (!(cfg.t_grid[i] > 0.0) || (i > 0 && !(cfg.t_grid[i] > cfg.t_grid[i - 1])))
      throw ConfigError("t_grid[" + std::to_string(i) + "]: grid must be positive and increasing");
  }
  for (std::size_t i = 0; i < cfg.scales.size(); ++i)
    if (cfg.scales[i] < 1) throw ConfigError("scales[" + std::to_string(i) + "]: must be >= 1");
  if (!(cfg.alpha > 0.0) && cfg.price_kind != "geometric") throw ConfigError("alpha: tick size must be > 0");
  if (!(cfg.sigma > -1.0)) throw ConfigError("sigma: must exceed -1");
}

} // namespace bhawkes
