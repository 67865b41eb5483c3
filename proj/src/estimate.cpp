#include "bhawkes/estimate.hpp"

#include <cmath>

#include "bhawkes/errors.hpp"
#include "bhawkes/stats.hpp"

namespace bhawkes {

Estimates estimate_params(std::span<const EventLog> logs, double bin_width) {
  if (!(bin_width > 0.0)) throw ValidationError("bin width must be positive");
  Estimates est;
  est.bin_width = bin_width;
  RunningStats bins;
  double depth_area = 0.0;
  double observed_time = 0.0;

  for (const auto& log : logs) {
    const double start = log.init.t;
    const auto nbins = static_cast<std::size_t>(std::floor((log.horizon - start) / bin_width));
    std::vector<long> counts(nbins, 0);
    double last_t = start;
    long gamma = log.init.gamma;
    for (const auto& e : log.events) {
      depth_area += static_cast<double>(gamma) * (e.time - last_t);
      last_t = e.time;
      gamma = e.state.gamma;
      if (e.kind == EventKind::Cancellation) ++est.cancellations;
      if (e.kind != EventKind::Execution) continue;
      ++est.executions;
      // bins are (k w, (k+1) w]; an execution exactly on a bin edge closes the bin
      const double pos = (e.time - start) / bin_width;
      auto k = static_cast<std::size_t>(std::ceil(pos)) - 1;
      if (pos <= 0.0) k = 0;
      if (k < nbins) ++counts[k];
    }
    depth_area += static_cast<double>(gamma) * (log.horizon - last_t);
    observed_time += log.horizon - start;
    for (long c : counts) bins.push(static_cast<double>(c));
  }

  est.bins = bins.count();
  if (est.bins < 100) throw InsufficientData("need at least 100 bins, got " + std::to_string(est.bins));
  if (est.executions < 100)
    throw InsufficientData("need at least 100 executions, got " + std::to_string(est.executions));

  est.exec_ratio = static_cast<double>(est.executions) / static_cast<double>(est.executions + est.cancellations);
  est.mean_depth = depth_area / observed_time;
  est.bin_mean = bins.mean();
  est.bin_var = bins.variance();
  est.vmr = est.bin_var / est.bin_mean;
  est.nu_hat = 1.0 - 1.0 / std::sqrt(est.vmr);
  est.a_over_b = est.nu_hat / est.exec_ratio;
  return est;
}

Estimates estimate_params(const EventLog& log, double bin_width) {
  return estimate_params(std::span<const EventLog>(&log, 1), bin_width);
}

double default_bin_width(const ModelParams& p) { return 50.0 / derived_constants(p).q_minus; }

} // namespace bhawkes
