#include "bhawkes/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "bhawkes/errors.hpp"

namespace bhawkes {

namespace odeint = boost::numeric::odeint;

std::vector<OdeState> integrate_on_grid(const OdeRhs& rhs, OdeState y0, std::span<const double> grid,
                                        const OdeOptions& opts) {
  std::vector<OdeState> out;
  if (grid.empty()) return out;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) throw GridOutOfRange("integrate_on_grid: grid must be nondecreasing");
  }
  out.reserve(grid.size());
  // odeint requires strictly increasing observation times
  std::vector<double> times;
  times.reserve(grid.size());
  for (double t : grid)
    if (times.empty() || t > times.back()) times.push_back(t);

  std::vector<OdeState> at_times;
  at_times.reserve(times.size());
  if (times.size() == 1) {
    at_times.push_back(y0);
  } else {
    using Stepper = odeint::runge_kutta_dopri5<OdeState>;
    auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, opts.max_dt, Stepper());
    auto system = [&rhs](const OdeState& y, OdeState& dydt, double t) { rhs(y, dydt, t); };
    auto observer = [&at_times](const OdeState& y, double) { at_times.push_back(y); };
    try {
      odeint::integrate_times(stepper, system, y0, times.begin(), times.end(), opts.initial_dt, observer,
                              odeint::max_step_checker(opts.max_steps));
    } catch (const odeint::odeint_error& e) {
      throw StepSizeRejected(std::string("ODE integration failed: ") + e.what());
    }
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] > grid[i - 1]) ++k;
    out.push_back(at_times[k]);
  }
  return out;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  if (hi <= lo) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, lo, hi, 30, rel_tol);
}

} // namespace bhawkes
