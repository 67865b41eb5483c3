#include "bhawkes/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "bhawkes/config.hpp"
#include "bhawkes/errors.hpp"
#include "bhawkes/io.hpp"
#include "bhawkes/verify.hpp"

namespace bhawkes {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Flag values. Unset flags leave the config untouched.
struct Overrides {
  std::string config_path;
  std::string preset;
  std::optional<double> lambda0, a, b, c, d;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output, out_dir;

  std::optional<double> horizon, burn_in, lookback, t_max, alpha, s0, sigma, bin_width;
  std::optional<std::size_t> grid_points, n_paths;
  std::optional<std::vector<long>> scales;
  std::optional<std::vector<double>> t_grid;
  std::optional<std::string> price_kind;
  bool stationary = false;

  // Command-only flags, not part of the config.
  std::string grid_out;
  std::string z_path;
  std::string format = "json";
  bool same_streams = false;
  std::vector<std::string> inputs;
  double scale = 1.0;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--preset", o.preset, "parameter preset (paper-example)");
  sub->add_option("--lambda0", o.lambda0, "base limit-order intensity");
  sub->add_option("--a", o.a, "shot-noise jump height");
  sub->add_option("--b", o.b, "shot-noise decay rate");
  sub->add_option("--c", o.c, "execution rate per order");
  sub->add_option("--d", o.d, "cancellation rate per order");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--output,-o", o.output, "output file (default: stdout)");
  sub->add_option("--out-dir", o.out_dir, "output directory (env BHAWKES_OUT_DIR)");
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (!o.preset.empty()) {
    if (o.preset != "paper-example") throw ConfigError("preset: unknown preset '" + o.preset + "'");
    cfg.params = kPaperExample;
  }
  if (const char* env = std::getenv("BHAWKES_OUT_DIR"); env && *env) cfg.out_dir = env;
  auto set = [](auto& field, const auto& opt) {
    if (opt) field = *opt;
  };
  set(cfg.params.lambda0, o.lambda0);
  set(cfg.params.a, o.a);
  set(cfg.params.b, o.b);
  set(cfg.params.c, o.c);
  set(cfg.params.d, o.d);
  set(cfg.seed, o.seed);
  set(cfg.output, o.output);
  set(cfg.out_dir, o.out_dir);
  set(cfg.horizon, o.horizon);
  set(cfg.burn_in, o.burn_in);
  set(cfg.lookback, o.lookback);
  set(cfg.t_max, o.t_max);
  set(cfg.alpha, o.alpha);
  set(cfg.s0, o.s0);
  set(cfg.sigma, o.sigma);
  set(cfg.bin_width, o.bin_width);
  set(cfg.grid_points, o.grid_points);
  set(cfg.n_paths, o.n_paths);
  set(cfg.scales, o.scales);
  set(cfg.t_grid, o.t_grid);
  set(cfg.price_kind, o.price_kind);
  if (o.stationary) cfg.stationary = true;
  validate_config(cfg);
  return cfg;
}

fs::path resolve_path(const ExperimentConfig& cfg, const std::string& name) {
  fs::path path(name);
  if (!cfg.out_dir.empty() && path.is_relative()) path = fs::path(cfg.out_dir) / path;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

// Writes through `write` to --output, to out_dir/default_name, or to `out`.
template <class Write>
void emit(const ExperimentConfig& cfg, const std::string& default_name, std::ostream& out, Write&& write) {
  std::string name = cfg.output;
  if (name.empty() && !cfg.out_dir.empty()) name = default_name;
  if (name.empty()) {
    write(out);
    return;
  }
  const fs::path path = resolve_path(cfg, name);
  std::ofstream file(path);
  if (!file) throw RuntimeError("cannot write '" + path.string() + "'");
  write(file);
  if (!file) throw RuntimeError("write to '" + path.string() + "' failed");
}

void write_side_file(const ExperimentConfig& cfg, const std::string& name, const auto& write) {
  const fs::path path = resolve_path(cfg, name);
  std::ofstream file(path);
  if (!file) throw RuntimeError("cannot write '" + path.string() + "'");
  write(file);
}

ordered_json record(const std::string& command, const ExperimentConfig& cfg) {
  ordered_json r;
  r["command"] = command;
  r["config"] = to_json(cfg);
  return r;
}

std::vector<double> horizon_grid(const ExperimentConfig& cfg) { return uniform_grid(cfg.horizon, cfg.grid_points); }

int cmd_simulate(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  const double burn_in = cfg.burn_in < 0.0 ? default_burn_in(cfg.params) : cfg.burn_in;
  const EventLog log = cfg.stationary ? simulate_stationary_path(cfg.params, cfg.horizon, burn_in, cfg.seed)
                                      : simulate_path(cfg.params, cfg.horizon, cfg.seed);
  const ordered_json meta = record("simulate", cfg);
  emit(cfg, "events.csv", out, [&](std::ostream& os) { write_event_log_csv(os, log, meta); });
  if (!o.grid_out.empty()) {
    if (!(cfg.horizon > 0.0)) throw HorizonNonPositive("horizon: must be > 0 for this command");
    const GridSample g = path_to_grid(log, horizon_grid(cfg));
    write_side_file(cfg, o.grid_out, [&](std::ostream& os) { write_grid_csv(os, g, meta); });
  }
  return 0;
}

int cmd_cluster(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  const ClusterSample s = simulate_market_orders(cfg.params, cfg.horizon, cfg.seed, cfg.lookback);
  const ordered_json meta = record("cluster", cfg);
  emit(cfg, "orders.csv", out, [&](std::ostream& os) { write_order_times_csv(os, s, meta); });
  if (!o.z_path.empty()) {
    const auto births = simulate_z_births(cfg.params, cfg.horizon, stream_seed(cfg.seed, 1));
    write_side_file(cfg, o.z_path, [&](std::ostream& os) { write_z_path_csv(os, births, meta); });
  }
  return 0;
}

int cmd_moments(const ExperimentConfig& cfg, std::ostream& out) {
  const MomentCurves mc = second_moments(cfg.params, uniform_grid(cfg.t_max, cfg.grid_points));
  const ordered_json meta = record("moments", cfg);
  emit(cfg, "moments.csv", out, [&](std::ostream& os) { write_moment_curves_csv(os, mc, meta); });
  return 0;
}

int cmd_scaling(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  if (o.format != "json" && o.format != "csv") throw ConfigError("format: expected json or csv");
  ScalingOptions opts;
  opts.stationary = cfg.stationary;
  opts.burn_in = cfg.burn_in;
  const ScalingReport r = run_scaling(cfg.params, cfg.scales, cfg.n_paths, cfg.t_grid, cfg.seed, opts);
  const ordered_json meta = record("scaling", cfg);
  if (o.format == "csv") {
    emit(cfg, "scaling.csv", out, [&](std::ostream& os) { write_scaling_csv(os, r, meta); });
  } else {
    emit(cfg, "scaling.json", out, [&](std::ostream& os) {
      ordered_json j;
      j["meta"] = meta;
      j["report"] = to_json(r);
      os << j.dump(2) << '\n';
    });
  }
  return 0;
}

int cmd_price(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  if (!(cfg.horizon > 0.0)) throw HorizonNonPositive("horizon: must be > 0 for this command");
  const PriceKind kind = parse_price_kind(cfg.price_kind);
  const ModelParams minus = cfg.minus_params.value_or(cfg.params);
  const PricePath path = simulate_price(cfg.params, minus, kind, cfg.alpha, cfg.horizon, horizon_grid(cfg), cfg.seed,
                                        GeometricSpec{cfg.s0, cfg.sigma}, o.same_streams);
  ordered_json meta = record("price", cfg);
  meta["same_streams"] = o.same_streams;
  emit(cfg, "price.csv", out, [&](std::ostream& os) { write_price_csv(os, path, meta); });
  return 0;
}

int cmd_estimate(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  std::vector<EventLog> logs;
  for (const auto& input : o.inputs) {
    std::ifstream in(input);
    if (!in) throw ConfigError("input: cannot open '" + input + "'");
    logs.push_back(read_event_log_csv(in));
  }
  if (logs.empty()) logs.push_back(simulate_path(cfg.params, cfg.horizon, cfg.seed));
  const double width = cfg.bin_width > 0.0 ? cfg.bin_width : default_bin_width(logs.front().params);
  const Estimates e = estimate_params(logs, width);
  ordered_json j;
  j["meta"] = record("estimate", cfg);
  if (!o.inputs.empty()) j["meta"]["inputs"] = o.inputs;
  j["estimates"] = to_json(e);
  emit(cfg, "estimates.json", out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out) {
  if (!(o.scale > 0.0)) throw ConfigError("scale: must be > 0");
  VerifyOptions opts;
  opts.scale = o.scale;
  opts.seed = cfg.seed;
  out << "verifying lambda0=" << cfg.params.lambda0 << " a=" << cfg.params.a << " b=" << cfg.params.b
      << " c=" << cfg.params.c << " d=" << cfg.params.d << " (scale " << o.scale << ")\n";
  const auto results = run_oracle_suite(cfg.params, opts, [&](const CheckResult& r) {
    out << (r.passed ? "  ok    " : "  FAIL  ") << r.name << '\n' << std::flush;
  });
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  out << '\n' << std::left << std::setw(6) << "" << std::setw(static_cast<int>(width)) << "check" << "  detail\n";
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << std::setw(6) << (r.passed ? "PASS" : "FAIL") << std::setw(static_cast<int>(width)) << r.name << "  "
        << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  out << '\n' << results.size() - failed << '/' << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 2;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and moment toolkit for the buffer-Hawkes limit order book model", "bhawkes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  Overrides o;

  auto* simulate = app.add_subcommand("simulate", "exact event-by-event simulation, writes the event log");
  auto* cluster = app.add_subcommand("cluster", "cluster-representation simulation, writes market-order times");
  auto* moments = app.add_subcommand("moments", "first and second moment curves");
  auto* scaling = app.add_subcommand("scaling", "diffusion-scaling Monte Carlo report");
  auto* price = app.add_subcommand("price", "price path from two independent order flows");
  auto* estimate = app.add_subcommand("estimate", "moment estimates from event logs, printed as JSON");
  auto* verify = app.add_subcommand("verify", "cross-oracle verification suite");
  for (auto* sub : {simulate, cluster, moments, scaling, price, estimate, verify}) add_common(sub, o);

  simulate->add_option("--horizon", o.horizon, "time horizon");
  simulate->add_flag("--stationary", o.stationary, "stationary-increments version (burn-in before 0)");
  simulate->add_option("--burn-in", o.burn_in, "burn-in length (default 10/q-)");
  simulate->add_option("--points", o.grid_points, "grid intervals for --grid-out");
  simulate->add_option("--grid-out", o.grid_out, "also write the path on a uniform grid");

  cluster->add_option("--horizon", o.horizon, "time horizon");
  cluster->add_option("--lookback", o.lookback, "immigrants also on [-lookback, 0)");
  cluster->add_option("--z-path", o.z_path, "also write one cascade Z_t");

  moments->add_option("--t-max", o.t_max, "last grid time");
  moments->add_option("--points", o.grid_points, "grid intervals");

  scaling->add_option("--scales", o.scales, "scale factors m")->delimiter(',');
  scaling->add_option("--n-paths", o.n_paths, "paths per scale");
  scaling->add_option("--t-grid", o.t_grid, "times t of N^(m)_t")->delimiter(',');
  scaling->add_flag("--stationary", o.stationary, "use the stationary-increments version");
  scaling->add_option("--burn-in", o.burn_in, "burn-in for --stationary");
  scaling->add_option("--format", o.format, "json or csv");

  price->add_option("--kind", o.price_kind, "midprice, inverse-depth or geometric");
  price->add_option("--alpha", o.alpha, "tick size (drift for geometric)");
  price->add_option("--horizon", o.horizon, "time horizon");
  price->add_option("--points", o.grid_points, "grid intervals");
  price->add_option("--s0", o.s0, "geometric initial price");
  price->add_option("--sigma", o.sigma, "geometric jump size");
  price->add_flag("--same-streams", o.same_streams, "drive both sides with one stream");

  estimate->add_option("--input", o.inputs, "event log CSV (repeatable)")->check(CLI::ExistingFile);
  estimate->add_option("--horizon", o.horizon, "simulate this long when no input is given");
  estimate->add_option("--bin-width", o.bin_width, "bin width for the dispersion estimate (default 50/q-)");

  verify->add_option("--scale", o.scale, "multiplier on the Monte Carlo sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig cfg = build_config(o);
    if (simulate->parsed()) return cmd_simulate(cfg, o, out);
    if (cluster->parsed()) return cmd_cluster(cfg, o, out);
    if (moments->parsed()) return cmd_moments(cfg, out);
    if (scaling->parsed()) return cmd_scaling(cfg, o, out);
    if (price->parsed()) return cmd_price(cfg, o, out);
    if (estimate->parsed()) return cmd_estimate(cfg, o, out);
    return cmd_verify(cfg, o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const RuntimeError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

} // namespace bhawkes
