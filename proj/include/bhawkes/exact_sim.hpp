#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bhawkes/params.hpp"
#include "bhawkes/rng.hpp"

namespace bhawkes {

enum class EventKind { LimitArrival, Cancellation, Execution };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// State of X = (Lambda, Gamma, N) plus the cumulative counters L and K.
/// `lambda` is the intensity at time `t` (post-jump at event epochs).
struct SimState {
  double t = 0.0;
  double lambda = 0.0;
  long gamma = 0;
  long n = 0;
  long l = 0;
  long k_cancelled = 0;

  bool operator==(const SimState&) const = default;
};

/// Empty book at time 0 with Lambda at its base level.
SimState initial_state(const ModelParams& p);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::LimitArrival;
  SimState state; // post-event

  bool operator==(const Event&) const = default;
};

struct EventLog {
  ModelParams params;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double burn_in = 0.0; // nonzero for stationary logs
  SimState init;
  std::vector<Event> events;

  /// State at time t (cadlag, Lambda decayed between events).
  SimState state_at(double t) const;
};

/// lambda0 + (lambda - lambda0) exp(-b dt)
inline double evolve_lambda(double lambda_at_event, double lambda0, double b, double dt) {
  return lambda0 + (lambda_at_event - lambda0) * std::exp(-b * dt);
}

/// Event kind for an event at an instant where the limit-order intensity
/// is `lambda_now`; `u` is uniform on [0, 1). The categories split
/// [0, 1) in proportion to lambda_now, d*gamma, c*gamma.
EventKind select_kind(double lambda_now, long gamma, const ModelParams& p, double u);

struct NextEvent {
  double dt = 0.0;
  EventKind kind = EventKind::LimitArrival;
};

/// Waiting time to the next event from `s` and its kind, sampled exactly by
/// thinning against the nonincreasing total rate. Once the proposed time
/// passes `limit` the search stops and the returned dt exceeds `limit`.
NextEvent next_event(const SimState& s, const ModelParams& p, Rng& rng,
                     double limit = std::numeric_limits<double>::infinity());

/// Applies an event of `kind` occurring `dt` after the epoch of `s`.
void apply_event(SimState& s, EventKind kind, const ModelParams& p, double dt);

/// Runs the process from `init` until `horizon`, calling on_event(Event)
/// after each jump. Returns the last pre-horizon state.
template <class OnEvent>
SimState run_events(const ModelParams& p, double horizon, Rng& rng, SimState state, OnEvent&& on_event) {
  while (true) {
    const double remaining = horizon - state.t;
    const NextEvent ev = next_event(state, p, rng, remaining);
    if (!(ev.dt <= remaining)) break;
    const double before = state.t;
    apply_event(state, ev.kind, p, ev.dt);
    if (!(state.t > before)) state.t = std::nextafter(before, std::numeric_limits<double>::infinity());
    on_event(Event{state.t, ev.kind, state});
  }
  return state;
}

/// Full event log on [0, horizon]. Same arguments give the same log.
/// Throws HorizonNonPositive for negative or non-finite horizons.
EventLog simulate_path(const ModelParams& p, double horizon, std::uint64_t seed,
                       std::optional<SimState> init = std::nullopt);

/// Runs from an empty book on [-burn_in, horizon], drops the events before
/// 0 and re-zeroes the clock and the counters N, L, K at 0.
EventLog simulate_stationary_path(const ModelParams& p, double horizon, double burn_in, std::uint64_t seed);

/// 10 / q_minus
double default_burn_in(const ModelParams& p);

/// Path values at grid times.
struct GridSample {
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<long> gamma;
  std::vector<long> n;
  std::vector<double> gamma_integral; // int_0^t Gamma_s ds
  std::vector<double> inverse_depth;  // sum over executions of 1 / Gamma_{s-}
};

/// Throws GridOutOfRange when a grid point is outside [0, horizon] or the
/// grid decreases.
GridSample path_to_grid(const EventLog& log, std::span<const double> grid);

/// Same values as path_to_grid(simulate_path(p, grid.back(), seed), grid)
/// without keeping the events.
GridSample sample_on_grid(const ModelParams& p, std::span<const double> grid, std::uint64_t seed);

/// Same values as path_to_grid(simulate_stationary_path(...), grid).
GridSample sample_stationary_on_grid(const ModelParams& p, std::span<const double> grid, double burn_in,
                                     std::uint64_t seed);

} // namespace bhawkes
