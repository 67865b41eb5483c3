#pragma once

#include <span>

#include "bhawkes/exact_sim.hpp"

namespace bhawkes {

/// Moment estimates from observed event logs.
struct Estimates {
  long executions = 0;
  long cancellations = 0;
  std::size_t bins = 0;
  double bin_width = 0.0;
  double exec_ratio = 0.0; // c / (c+d)
  double mean_depth = 0.0; // E Gamma_inf, time average of Gamma
  double bin_mean = 0.0;
  double bin_var = 0.0;
  double vmr = 0.0;        // variance-to-mean ratio of binned N increments
  double nu_hat = 0.0;     // 1 - vmr^{-1/2}
  double a_over_b = 0.0;   // nu_hat (c+d) / c
};

/// Throws InsufficientData with fewer than 100 bins or 100 executions.
Estimates estimate_params(std::span<const EventLog> logs, double bin_width);
Estimates estimate_params(const EventLog& log, double bin_width);

/// 50 / q_minus: long enough for the binned VMR to sit near its limit.
double default_bin_width(const ModelParams& p);

} // namespace bhawkes
