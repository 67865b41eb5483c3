#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bhawkes {

/// Tolerances for the adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) driver.
struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double initial_dt = 1e-3;
  double max_dt = 0.0; // 0: unbounded
  std::size_t max_steps = 5'000'000;
};

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& y, OdeState& dydt, double t)>;

/// Integrates y' = f(y, t) from grid.front() with initial value y0 and
/// returns the state at every grid time. The grid must be nondecreasing.
/// Throws StepSizeRejected when the controller cannot make progress.
std::vector<OdeState> integrate_on_grid(const OdeRhs& rhs, OdeState y0, std::span<const double> grid,
                                        const OdeOptions& opts = {});

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-10);

} // namespace bhawkes
