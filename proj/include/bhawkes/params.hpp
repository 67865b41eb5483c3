#pragma once

#include <limits>

namespace bhawkes {

/// The five model parameters of the buffer-Hawkes process.
///
/// lambda0: base limit-order intensity; a: shot-noise jump height;
/// b: shot-noise decay rate; c: execution rate per resting order;
/// d: cancellation rate per resting order.
///
/// Construct through validate_params() to get the sign and stability
/// checks. The struct itself is a plain aggregate so tests can build
/// deliberately degenerate states.
struct ModelParams {
  double lambda0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  bool operator==(const ModelParams&) const = default;
};

struct DerivedConstants {
  double nu = 0.0;        // mean offspring ac / (b(c+d))
  double Q = 0.0;         // sqrt((b-c-d)^2 + 4ac)
  double q_minus = 0.0;
  double q_plus = 0.0;
  double theta0 = std::numeric_limits<double>::infinity();
  double ell_inf = 0.0;   // E Lambda_inf
  double g_inf = 0.0;     // E Gamma_inf
  double x_inf = 1.0;     // E Z_inf
  double y_inf = 0.0;     // Var Z_inf
  double sigma2 = 0.0;    // diffusion variance coefficient
  double exec_fraction = 0.0; // c / (c+d)
  double stationary_rate = 0.0; // long-run executions per unit time

  /// Price volatility alpha^2 sigma^2 / 2 for tick size alpha.
  double beta(double alpha) const { return 0.5 * alpha * alpha * sigma2; }
};

/// Throws NonPositiveParameter or StabilityViolation.
ModelParams validate_params(double lambda0, double a, double b, double c, double d);
ModelParams validate_params(const ModelParams& raw);

DerivedConstants derived_constants(const ModelParams& p);

/// The (2, 1, 2, 1, 1) preset with rational derived constants.
inline constexpr ModelParams kPaperExample{2.0, 1.0, 2.0, 1.0, 1.0};

} // namespace bhawkes
