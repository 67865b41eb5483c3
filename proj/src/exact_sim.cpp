#include "bhawkes/exact_sim.hpp"

#include <algorithm>

#include "bhawkes/errors.hpp"

namespace bhawkes {

std::string_view to_string(EventKind kind) {
  switch (kind) {
  case EventKind::LimitArrival:
    return "LIMIT_ARRIVAL";
  case EventKind::Cancellation:
    return "CANCELLATION";
  case EventKind::Execution:
    return "EXECUTION";
  }
  return "UNKNOWN";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (auto k : {EventKind::LimitArrival, EventKind::Cancellation, EventKind::Execution})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

SimState initial_state(const ModelParams& p) { return SimState{0.0, p.lambda0, 0, 0, 0, 0}; }

namespace {

EventKind kind_from_mark(double lambda_now, long gamma, const ModelParams& p, double mark) {
  if (mark < lambda_now) return EventKind::LimitArrival;
  if (mark < lambda_now + p.d * static_cast<double>(gamma)) return EventKind::Cancellation;
  return gamma > 0 ? EventKind::Execution : EventKind::LimitArrival;
}

} // namespace

EventKind select_kind(double lambda_now, long gamma, const ModelParams& p, double u) {
  const double g = static_cast<double>(gamma);
  return kind_from_mark(lambda_now, gamma, p, u * (lambda_now + (p.c + p.d) * g));
}

NextEvent next_event(const SimState& s, const ModelParams& p, Rng& rng, double limit) {
  const double depth_rate = (p.c + p.d) * static_cast<double>(s.gamma);
  const double excess = s.lambda - p.lambda0;
  double bound = s.lambda + depth_rate;
  double elapsed = 0.0;
  while (true) {
    elapsed += rng.exponential(bound);
    if (elapsed > limit) return {elapsed, EventKind::LimitArrival};
    const double lambda_now = p.lambda0 + excess * std::exp(-p.b * elapsed);
    const double rate = lambda_now + depth_rate;
    const double mark = rng.uniform() * bound;
    if (mark < rate) return {elapsed, kind_from_mark(lambda_now, s.gamma, p, mark)};
    // the total rate only decreases between events, so it stays a valid bound
    bound = rate;
  }
}

void apply_event(SimState& s, EventKind kind, const ModelParams& p, double dt) {
  s.lambda = evolve_lambda(s.lambda, p.lambda0, p.b, dt);
  s.t += dt;
  switch (kind) {
  case EventKind::LimitArrival:
    ++s.gamma;
    ++s.l;
    break;
  case EventKind::Cancellation:
    --s.gamma;
    ++s.k_cancelled;
    break;
  case EventKind::Execution:
    --s.gamma;
    ++s.n;
    s.lambda += p.a;
    break;
  }
}

SimState EventLog::state_at(double t) const {
  auto it = std::upper_bound(events.begin(), events.end(), t,
                             [](double value, const Event& e) { return value < e.time; });
  SimState s = it == events.begin() ? init : std::prev(it)->state;
  s.lambda = evolve_lambda(s.lambda, params.lambda0, params.b, t - s.t);
  s.t = t;
  return s;
}

namespace {

void check_horizon(double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw HorizonNonPositive("horizon must be a finite nonnegative number");
}

// Records path values at origin + grid[i], with N, the Gamma integral and
// the inverse-depth sum measured from the origin.
class GridRecorder {
public:
  GridRecorder(const ModelParams& p, std::span<const double> grid, double origin, const SimState& start,
               bool relative_counts)
      : p_(p), grid_(grid), origin_(origin), prev_(start), relative_(relative_counts) {
    out_.t.assign(grid.begin(), grid.end());
    out_.lambda.reserve(grid.size());
    out_.gamma.reserve(grid.size());
    out_.n.reserve(grid.size());
    out_.gamma_integral.reserve(grid.size());
    out_.inverse_depth.reserve(grid.size());
    if (relative_) base_n_ = start.n;
  }

  void operator()(const Event& ev) {
    while (next_ < grid_.size() && origin_ + grid_[next_] < ev.time) record(origin_ + grid_[next_++]);
    if (ev.time > origin_) {
      gamma_integral_ += static_cast<double>(prev_.gamma) * (ev.time - std::max(prev_.t, origin_));
      if (ev.kind == EventKind::Execution) inverse_depth_ += 1.0 / static_cast<double>(ev.state.gamma + 1);
    } else if (relative_) {
      base_n_ = ev.state.n;
    }
    prev_ = ev.state;
  }

  GridSample finish() {
    while (next_ < grid_.size()) record(origin_ + grid_[next_++]);
    return std::move(out_);
  }

private:
  void record(double at) {
    out_.lambda.push_back(evolve_lambda(prev_.lambda, p_.lambda0, p_.b, at - prev_.t));
    out_.gamma.push_back(prev_.gamma);
    out_.n.push_back(prev_.n - base_n_);
    out_.gamma_integral.push_back(gamma_integral_ +
                                  static_cast<double>(prev_.gamma) * std::max(0.0, at - std::max(prev_.t, origin_)));
    out_.inverse_depth.push_back(inverse_depth_);
  }

  const ModelParams& p_;
  std::span<const double> grid_;
  double origin_;
  SimState prev_;
  bool relative_;
  long base_n_ = 0;
  std::size_t next_ = 0;
  double gamma_integral_ = 0.0;
  double inverse_depth_ = 0.0;
  GridSample out_;
};

void check_grid(std::span<const double> grid, double lo, double hi) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lo && grid[i] <= hi)) throw GridOutOfRange("grid point outside the simulated interval");
    if (i > 0 && grid[i] < grid[i - 1]) throw GridOutOfRange("grid must be nondecreasing");
  }
}

} // namespace

EventLog simulate_path(const ModelParams& p, double horizon, std::uint64_t seed, std::optional<SimState> init) {
  check_horizon(horizon);
  EventLog log;
  log.params = p;
  log.seed = seed;
  log.horizon = horizon;
  log.init = init.value_or(initial_state(p));
  Rng rng(seed);
  run_events(p, horizon, rng, log.init, [&log](const Event& e) { log.events.push_back(e); });
  return log;
}

double default_burn_in(const ModelParams& p) { return 10.0 / derived_constants(p).q_minus; }

EventLog simulate_stationary_path(const ModelParams& p, double horizon, double burn_in, std::uint64_t seed) {
  check_horizon(horizon);
  if (!(burn_in >= 0.0) || !std::isfinite(burn_in)) throw ValidationError("burn_in must be nonnegative");
  if (burn_in == 0.0) return simulate_path(p, horizon, seed);

  const EventLog full = simulate_path(p, burn_in + horizon, seed);
  EventLog log;
  log.params = p;
  log.seed = seed;
  log.horizon = horizon;
  log.burn_in = burn_in;
  SimState origin = full.state_at(burn_in);
  const SimState counters = origin;
  origin.t = 0.0;
  origin.n = origin.l = origin.k_cancelled = 0;
  log.init = origin;
  for (const auto& e : full.events) {
    if (e.time <= burn_in) continue;
    Event shifted = e;
    shifted.time = e.time - burn_in;
    if (shifted.time > horizon) break;
    shifted.state.t = shifted.time;
    shifted.state.n -= counters.n;
    shifted.state.l -= counters.l;
    shifted.state.k_cancelled -= counters.k_cancelled;
    log.events.push_back(shifted);
  }
  return log;
}

GridSample path_to_grid(const EventLog& log, std::span<const double> grid) {
  check_grid(grid, log.init.t, log.horizon);
  GridRecorder rec(log.params, grid, 0.0, log.init, false);
  for (const auto& e : log.events) rec(e);
  return rec.finish();
}

GridSample sample_on_grid(const ModelParams& p, std::span<const double> grid, std::uint64_t seed) {
  if (grid.empty()) return {};
  check_grid(grid, 0.0, grid.back());
  Rng rng(seed);
  GridRecorder rec(p, grid, 0.0, initial_state(p), false);
  run_events(p, grid.back(), rng, initial_state(p), rec);
  return rec.finish();
}

GridSample sample_stationary_on_grid(const ModelParams& p, std::span<const double> grid, double burn_in,
                                     std::uint64_t seed) {
  if (grid.empty()) return {};
  check_grid(grid, 0.0, grid.back());
  if (!(burn_in >= 0.0)) throw ValidationError("burn_in must be nonnegative");
  Rng rng(seed);
  GridRecorder rec(p, grid, burn_in, initial_state(p), true);
  run_events(p, burn_in + grid.back(), rng, initial_state(p), rec);
  return rec.finish();
}

} // namespace bhawkes
