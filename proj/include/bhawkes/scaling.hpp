#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bhawkes/params.hpp"

namespace bhawkes {

/// Statistics of N^{(m)}_t = (N_{mt} - E N_{mt}) / sqrt(m) at one (m, t).
struct ScaleStats {
  long m = 1;
  double t = 0.0;
  std::size_t n_paths = 0;
  double emp_mean = 0.0;
  double mean_se = 0.0;
  double emp_var = 0.0;
  double var_se = 0.0;
  double predicted_var = 0.0; // sigma^2 t
  double ks = 0.0;            // KS distance of N^{(m)}_t / (sigma sqrt t) to N(0, 1)
  double incr_cov = 0.0;      // Cov(N^{(m)}_{t_prev}, N^{(m)}_t - N^{(m)}_{t_prev}); 0 at the first grid point
};

struct ScalingOptions {
  bool stationary = false;
  double burn_in = -1.0; // negative: default_burn_in(params)
};

struct ScalingReport {
  ModelParams params;
  std::vector<long> scales;
  std::vector<double> t_grid;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  bool stationary = false;
  double sigma2 = 0.0;
  std::vector<ScaleStats> rows; // scale-major, then grid order
};

/// Simulates n_paths exact paths per scale and reports the centered,
/// sqrt(m)-scaled counts. Centering uses the analytic mean (the stationary
/// mean slope in stationary mode). Path i of scale m uses
/// stream_seed(seed, m, i). Throws ValidationError for scales < 1,
/// n_paths < 100, or a t_grid that is not positive and increasing.
ScalingReport run_scaling(const ModelParams& p, std::span<const long> scales, std::size_t n_paths,
                          std::span<const double> t_grid, std::uint64_t seed, const ScalingOptions& opts = {});

/// Centered, scaled values N^{(m)}_t for each path, at a single t.
std::vector<double> scaled_counts(const ModelParams& p, long m, double t, std::size_t n_paths, std::uint64_t seed,
                                  const ScalingOptions& opts = {});

} // namespace bhawkes
