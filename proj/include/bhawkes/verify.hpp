#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bhawkes/params.hpp"
#include "bhawkes/rng.hpp"

namespace bhawkes {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Sample sizes of the Monte Carlo checks. `scale` multiplies every path
/// count (floored at 100); 1.0 gives the full-size runs.
struct VerifyOptions {
  double scale = 1.0;
  std::uint64_t seed = 20180701;
};

std::size_t scaled_count(std::size_t full, const VerifyOptions& opts);

/// Each function runs one family of checks and returns one result per
/// compared quantity.
std::vector<CheckResult> check_first_moments(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_variance_growth(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_dual_simulators(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_borel_law(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_cumulants(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_second_moment_limits(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_diffusion_limit(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_stationary_version(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_price_models(const ModelParams& p, const VerifyOptions& opts);
std::vector<CheckResult> check_estimation(const ModelParams& p, const VerifyOptions& opts);
/// Var N_50 / 50 from the moment ODE against sigma^2, as a plain ratio.
CheckResult check_variance_ratio(const ModelParams& p, double t, double rel_tol);

/// Random stable parameters: a and d are exactly 0 in some draws, and
/// nu stays below 0.9.
ModelParams random_params(Rng& rng);

/// Randomized structural properties over `cases` random parameter sets.
std::vector<CheckResult> check_properties(std::size_t cases, const VerifyOptions& opts);

/// The cross-oracle suite behind `bhawkes verify`.
std::vector<CheckResult> run_oracle_suite(const ModelParams& p, const VerifyOptions& opts,
                                          const std::function<void(const CheckResult&)>& on_result = {});

void print_results(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace bhawkes
