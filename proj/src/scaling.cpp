#include "bhawkes/scaling.hpp"

#include <cmath>

#include "bhawkes/errors.hpp"
#include "bhawkes/exact_sim.hpp"
#include "bhawkes/moments.hpp"
#include "bhawkes/parallel.hpp"
#include "bhawkes/rng.hpp"
#include "bhawkes/stats.hpp"

namespace bhawkes {

namespace {

// rows: paths, columns: grid points
std::vector<std::vector<double>> centered_paths(const ModelParams& p, long m, std::span<const double> t_grid,
                                                std::size_t n_paths, std::uint64_t seed, const ScalingOptions& opts) {
  const double scale = static_cast<double>(m);
  std::vector<double> grid;
  for (double t : t_grid) grid.push_back(scale * t);
  const AnalyticMoments am = analytic_moments(p);
  const double slope = derived_constants(p).stationary_rate;
  std::vector<double> centre;
  for (double t : grid) centre.push_back(opts.stationary ? slope * t : am.m(t));
  const double burn_in = opts.burn_in >= 0.0 ? opts.burn_in : default_burn_in(p);
  const double root_m = std::sqrt(scale);

  return parallel_map(n_paths, [&](std::size_t i) {
    const std::uint64_t path_seed = stream_seed(seed, static_cast<std::uint64_t>(m), i);
    const GridSample s = opts.stationary ? sample_stationary_on_grid(p, grid, burn_in, path_seed)
                                         : sample_on_grid(p, grid, path_seed);
    std::vector<double> row(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) row[j] = (static_cast<double>(s.n[j]) - centre[j]) / root_m;
    return row;
  });
}

void check_inputs(std::span<const long> scales, std::size_t n_paths, std::span<const double> t_grid) {
  for (long m : scales)
    if (m < 1) throw ValidationError("scales must be >= 1");
  if (n_paths < 100) throw ValidationError("n_paths must be >= 100");
  if (t_grid.empty()) throw ValidationError("t_grid must not be empty");
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    if (!(t_grid[j] > 0.0) || (j > 0 && !(t_grid[j] > t_grid[j - 1])))
      throw ValidationError("t_grid must be positive and increasing");
  }
}

} // namespace

ScalingReport run_scaling(const ModelParams& p, std::span<const long> scales, std::size_t n_paths,
                          std::span<const double> t_grid, std::uint64_t seed, const ScalingOptions& opts) {
  check_inputs(scales, n_paths, t_grid);
  ScalingReport report;
  report.params = p;
  report.scales.assign(scales.begin(), scales.end());
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  report.n_paths = n_paths;
  report.seed = seed;
  report.stationary = opts.stationary;
  report.sigma2 = derived_constants(p).sigma2;
  const double sigma = std::sqrt(report.sigma2);

  for (long m : scales) {
    const auto paths = centered_paths(p, m, t_grid, n_paths, seed, opts);
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      std::vector<double> column(n_paths);
      for (std::size_t i = 0; i < n_paths; ++i) column[i] = paths[i][j];
      const RunningStats st = summarize(column);
      ScaleStats row;
      row.m = m;
      row.t = t_grid[j];
      row.n_paths = n_paths;
      row.emp_mean = st.mean();
      row.mean_se = st.std_error();
      row.emp_var = st.variance();
      row.var_se = st.variance_std_error();
      row.predicted_var = report.sigma2 * t_grid[j];
      std::vector<double> standardized(column);
      const double norm = sigma * std::sqrt(t_grid[j]);
      for (double& v : standardized) v /= norm;
      row.ks = ks_distance_normal(std::move(standardized));
      if (j > 0) {
        RunningStats prev, incr;
        double cross = 0.0;
        for (std::size_t i = 0; i < n_paths; ++i) {
          prev.push(paths[i][j - 1]);
          incr.push(paths[i][j] - paths[i][j - 1]);
        }
        for (std::size_t i = 0; i < n_paths; ++i)
          cross += (paths[i][j - 1] - prev.mean()) * (paths[i][j] - paths[i][j - 1] - incr.mean());
        row.incr_cov = cross / static_cast<double>(n_paths - 1);
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::vector<double> scaled_counts(const ModelParams& p, long m, double t, std::size_t n_paths, std::uint64_t seed,
                                  const ScalingOptions& opts) {
  const double grid[] = {t};
  const auto paths = centered_paths(p, m, grid, n_paths, seed, opts);
  std::vector<double> out;
  out.reserve(n_paths);
  for (const auto& row : paths) out.push_back(row[0]);
  return out;
}

} // namespace bhawkes
