#include "bhawkes/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "bhawkes/errors.hpp"

namespace bhawkes {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const ModelParams& p) {
  ordered_json j;
  j["lambda0"] = p.lambda0;
  j["a"] = p.a;
  j["b"] = p.b;
  j["c"] = p.c;
  j["d"] = p.d;
  return j;
}

ModelParams params_from_json(const nlohmann::json& j) {
  ModelParams p;
  try {
    p.lambda0 = j.at("lambda0").get<double>();
    p.a = j.at("a").get<double>();
    p.b = j.at("b").get<double>();
    p.c = j.at("c").get<double>();
    p.d = j.at("d").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  return p;
}

void write_metadata(std::ostream& os, const ordered_json& record) {
  ordered_json meta;
  meta["tool"] = "bhawkes";
  meta["version"] = kToolkitVersion;
  for (const auto& [key, value] : record.items()) meta[key] = value;
  os << "# " << meta.dump() << '\n';
}

nlohmann::json parse_metadata(const std::string& line) {
  if (line.rfind("# ", 0) != 0) return nullptr;
  auto j = nlohmann::json::parse(line.substr(2), nullptr, false);
  if (j.is_discarded()) return nullptr;
  return j;
}

void write_event_log_csv(std::ostream& os, const EventLog& log, const ordered_json& meta) {
  ordered_json record = meta;
  record["params"] = to_json(log.params);
  record["seed"] = log.seed;
  record["horizon"] = log.horizon;
  if (log.burn_in > 0.0) record["burn_in"] = log.burn_in;
  if (!(log.init == initial_state(log.params))) {
    record["init"] = {{"t", log.init.t},     {"lambda", log.init.lambda}, {"gamma", log.init.gamma},
                      {"n", log.init.n},     {"l", log.init.l},           {"k_cancelled", log.init.k_cancelled}};
  }
  write_metadata(os, record);
  os << "time,kind,lambda,gamma,n\n";
  for (const auto& e : log.events) {
    os << format_double(e.time) << ',' << to_string(e.kind) << ',' << format_double(e.state.lambda) << ','
       << e.state.gamma << ',' << e.state.n << '\n';
  }
}

EventLog read_event_log_csv(std::istream& is) {
  std::string line;
  nlohmann::json meta;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto parsed = parse_metadata(line);
      if (parsed.is_object()) meta = parsed;
      continue;
    }
    break;
  }
  if (line != "time,kind,lambda,gamma,n") throw ConfigError("event log: unexpected header '" + line + "'");
  if (!meta.is_object() || !meta.contains("params")) throw ConfigError("event log: missing metadata line with params");

  EventLog log;
  log.params = params_from_json(meta.at("params"));
  log.seed = meta.value("seed", std::uint64_t{0});
  log.horizon = meta.value("horizon", 0.0);
  log.burn_in = meta.value("burn_in", 0.0);
  log.init = initial_state(log.params);
  if (meta.contains("init")) {
    const auto& in = meta.at("init");
    log.init = SimState{in.at("t").get<double>(),  in.at("lambda").get<double>(), in.at("gamma").get<long>(),
                        in.at("n").get<long>(),    in.at("l").get<long>(),       in.at("k_cancelled").get<long>()};
  }
  SimState s = log.init;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string time, kind, lambda, gamma, n;
    if (!std::getline(fields, time, ',') || !std::getline(fields, kind, ',') || !std::getline(fields, lambda, ',') ||
        !std::getline(fields, gamma, ',') || !std::getline(fields, n))
      throw ConfigError("event log: malformed row " + std::to_string(row));
    const auto k = parse_event_kind(kind);
    if (!k) throw ConfigError("event log: unknown kind '" + kind + "' in row " + std::to_string(row));
    try {
      s.t = std::stod(time);
      s.lambda = std::stod(lambda);
      s.gamma = std::stol(gamma);
      s.n = std::stol(n);
    } catch (const std::exception&) {
      throw ConfigError("event log: bad number in row " + std::to_string(row));
    }
    if (*k == EventKind::LimitArrival) ++s.l;
    if (*k == EventKind::Cancellation) ++s.k_cancelled;
    log.events.push_back({s.t, *k, s});
  }
  if (!log.events.empty() && log.horizon < log.events.back().time) log.horizon = log.events.back().time;
  return log;
}

void write_grid_csv(std::ostream& os, const GridSample& g, const ordered_json& meta) {
  write_metadata(os, meta);
  os << "t,lambda,gamma,n\n";
  for (std::size_t i = 0; i < g.t.size(); ++i)
    os << format_double(g.t[i]) << ',' << format_double(g.lambda[i]) << ',' << g.gamma[i] << ',' << g.n[i] << '\n';
}

void write_order_times_csv(std::ostream& os, const ClusterSample& s, const ordered_json& meta) {
  write_metadata(os, meta);
  os << "time\n";
  for (double t : s.order_times) os << format_double(t) << '\n';
}

void write_z_path_csv(std::ostream& os, std::span<const double> births, const ordered_json& meta) {
  write_metadata(os, meta);
  os << "time,z\n";
  os << "0,1\n";
  long z = 1;
  for (double t : births) os << format_double(t) << ',' << ++z << '\n';
}

void write_moment_curves_csv(std::ostream& os, const MomentCurves& mc, const ordered_json& meta) {
  write_metadata(os, meta);
  os << "t,ell,g,m,pbar,qbar,rbar,ubar,vbar,wbar,x,y\n";
  for (std::size_t i = 0; i < mc.grid.size(); ++i) {
    const double cols[] = {mc.grid[i], mc.ell[i],  mc.g[i],    mc.m[i],    mc.pbar[i], mc.qbar[i],
                           mc.rbar[i], mc.ubar[i], mc.vbar[i], mc.wbar[i], mc.x[i],    mc.y[i]};
    for (std::size_t c = 0; c < std::size(cols); ++c) os << (c ? "," : "") << format_double(cols[c]);
    os << '\n';
  }
}

void write_scaling_csv(std::ostream& os, const ScalingReport& r, const ordered_json& meta) {
  write_metadata(os, meta);
  os << "m,t,n_paths,emp_mean,emp_var,predicted_var,ks\n";
  for (const auto& row : r.rows) {
    os << row.m << ',' << format_double(row.t) << ',' << row.n_paths << ',' << format_double(row.emp_mean) << ','
       << format_double(row.emp_var) << ',' << format_double(row.predicted_var) << ',' << format_double(row.ks) << '\n';
  }
}

ordered_json to_json(const ScalingReport& r) {
  ordered_json j;
  j["params"] = to_json(r.params);
  j["sigma2"] = r.sigma2;
  j["seed"] = r.seed;
  j["n_paths"] = r.n_paths;
  j["stationary"] = r.stationary;
  j["t_grid"] = r.t_grid;
  ordered_json scales = ordered_json::array();
  for (long m : r.scales) {
    ordered_json entry;
    entry["m"] = m;
    ordered_json stats = ordered_json::array();
    for (const auto& row : r.rows) {
      if (row.m != m) continue;
      stats.push_back({{"t", row.t},
                       {"n_paths", row.n_paths},
                       {"emp_mean", row.emp_mean},
                       {"mean_se", row.mean_se},
                       {"emp_var", row.emp_var},
                       {"var_se", row.var_se},
                       {"predicted_var", row.predicted_var},
                       {"ks", row.ks},
                       {"incr_cov", row.incr_cov}});
    }
    entry["stats"] = std::move(stats);
    scales.push_back(std::move(entry));
  }
  j["scales"] = std::move(scales);
  return j;
}

void write_price_csv(std::ostream& os, const PricePath& path, const ordered_json& meta) {
  ordered_json record = meta;
  record["kind"] = std::string(to_string(path.kind));
  record["alpha"] = path.alpha;
  if (path.kind == PriceKind::Geometric) {
    record["s0"] = path.geometric.s0;
    record["sigma"] = path.geometric.sigma;
  }
  write_metadata(os, record);
  os << "t,price\n";
  for (std::size_t i = 0; i < path.grid.size(); ++i)
    os << format_double(path.grid[i]) << ',' << format_double(path.values[i]) << '\n';
}

ordered_json to_json(const Estimates& e) {
  ordered_json j;
  j["executions"] = e.executions;
  j["cancellations"] = e.cancellations;
  j["bins"] = e.bins;
  j["bin_width"] = e.bin_width;
  j["exec_ratio"] = e.exec_ratio;
  j["mean_depth"] = e.mean_depth;
  j["bin_mean"] = e.bin_mean;
  j["bin_var"] = e.bin_var;
  j["vmr"] = e.vmr;
  j["nu_hat"] = e.nu_hat;
  j["a_over_b"] = e.a_over_b;
  return j;
}

} // namespace bhawkes
