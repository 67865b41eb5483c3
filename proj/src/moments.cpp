#include "bhawkes/moments.hpp"

#include <cmath>

#include "bhawkes/errors.hpp"
#include "bhawkes/special.hpp"

namespace bhawkes {

AnalyticMoments analytic_moments(const ModelParams& p) {
  const DerivedConstants k = derived_constants(p);
  const double ac = p.a * p.c;
  const double spread = k.q_plus - k.q_minus;
  const bool double_root = k.Q < 1e-12 * (p.b + p.c + p.d);

  AnalyticMoments am;
  if (double_root) {
    const double q = 0.5 * (p.b + p.c + p.d);
    am.kernel = ExpPoly({{1.0, 1, q}});
  } else {
    am.kernel = ExpPoly({{1.0 / spread, 0, k.q_minus}, {-1.0 / spread, 0, k.q_plus}});
  }
  const ExpPoly ik = am.kernel.integral();
  const ExpPoly iik = ik.integral();
  am.ell = p.lambda0 * (ExpPoly::constant(1.0) + ac * ik);
  am.g = p.lambda0 * (am.kernel + p.b * ik);
  am.m = p.c * p.lambda0 * (ik + p.b * iik);
  am.x = ExpPoly::constant(1.0) + ac * ik;
  if (ac > 0.0 && !double_root) {
    const ExpPoly x2 = am.x * am.x;
    am.y = (ac / spread) * (x2.convolve_exp(k.q_minus) - x2.convolve_exp(k.q_plus));
  }
  return am;
}

FirstMoments first_moments(const ModelParams& p, double t) {
  const AnalyticMoments am = analytic_moments(p);
  return {am.ell(t), am.g(t), am.m(t)};
}

MomentAsymptotes moment_asymptotes(const ModelParams& p) {
  const DerivedConstants k = derived_constants(p);
  const double ac = p.a * p.c;
  const double cd = p.c + p.d;
  const double bcd = p.b + cd;
  const double gap = p.b * cd - ac;
  const double g = k.g_inf;
  const double ca2 = p.c * p.a * p.a;

  MomentAsymptotes a;
  a.ell = k.ell_inf;
  a.g = g;
  a.m_slope = p.c * g;
  a.pbar = ca2 * cd * g / (2.0 * bcd * gap);
  a.qbar = ca2 * (cd * bcd - ac) * g / (2.0 * bcd * gap);
  a.rbar = g + ca2 * g / (2.0 * bcd * gap);
  // [u; v] = (1/gap) [[c+d, ac], [1, b]] [ac g + c pbar; c (rbar - g)]
  const double f1 = ac * g + p.c * a.pbar;
  const double f2 = p.c * (a.rbar - g);
  a.ubar = (cd * f1 + ac * f2) / gap;
  a.vbar = (f1 + p.b * f2) / gap;
  a.wbar_slope = p.c * (2.0 * a.vbar + g);
  a.x = k.x_inf;
  a.y = k.y_inf;
  return a;
}

std::vector<double> uniform_grid(double t_max, std::size_t intervals) {
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(intervals);
  grid.back() = t_max;
  return grid;
}

MomentCurves second_moments(const ModelParams& p, std::span<const double> grid, const OdeOptions& opts) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && grid[i] < grid[i - 1]))
      throw GridOutOfRange("second_moments: grid must be nonnegative and nondecreasing");
  }
  const AnalyticMoments am = analytic_moments(p);
  const double ac = p.a * p.c;
  const double cd = p.c + p.d;
  const double bcd = p.b + cd;
  const double ca2 = p.c * p.a * p.a;

  auto rhs = [&](const OdeState& s, OdeState& ds, double t) {
    const double ell = am.ell(t);
    const double g = am.g(t);
    const double pb = s[0], qb = s[1], rb = s[2], ub = s[3], vb = s[4];
    ds[0] = -bcd * pb + qb + ac * rb - ac * g;
    ds[1] = 2.0 * ac * pb - 2.0 * p.b * qb + ca2 * g;
    ds[2] = 2.0 * pb - 2.0 * cd * rb + cd * g + ell;
    ds[3] = -p.b * ub + ac * vb + ac * g + p.c * pb;
    ds[4] = ub - cd * vb - p.c * g + p.c * rb;
    ds[5] = 2.0 * p.c * vb + p.c * g;
  };

  std::vector<double> times;
  times.reserve(grid.size() + 1);
  if (grid.empty() || grid.front() > 0.0) times.push_back(0.0);
  times.insert(times.end(), grid.begin(), grid.end());
  const auto states = integrate_on_grid(rhs, OdeState(6, 0.0), times, opts);
  const std::size_t offset = times.size() - grid.size();

  MomentCurves mc;
  mc.grid.assign(grid.begin(), grid.end());
  mc.asymptotes = moment_asymptotes(p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const auto& s = states[i + offset];
    mc.ell.push_back(am.ell(t));
    mc.g.push_back(am.g(t));
    mc.m.push_back(am.m(t));
    mc.pbar.push_back(s[0]);
    mc.qbar.push_back(s[1]);
    mc.rbar.push_back(s[2]);
    mc.ubar.push_back(s[3]);
    mc.vbar.push_back(s[4]);
    mc.wbar.push_back(s[5]);
    mc.x.push_back(am.x(t));
    mc.y.push_back(am.y(t));
  }
  return mc;
}

double cluster_mean(const ModelParams& p, double t) { return analytic_moments(p).x(t); }

double cluster_var(const ModelParams& p, double t) { return analytic_moments(p).y(t); }

double var_n_cluster(const ModelParams& p, double t, double rel_tol) {
  if (!(t > 0.0)) return 0.0;
  const AnalyticMoments am = analytic_moments(p);
  const double cd = p.c + p.d;
  auto integrand = [&](double u) {
    const double x = am.x(u);
    return (am.y(u) + x * x) * -std::expm1(-cd * (t - u));
  };
  return p.lambda0 * p.c / cd * integrate(integrand, 0.0, t, rel_tol);
}

namespace {

void check_theta(const ModelParams& p, double theta) {
  const double nu = derived_constants(p).nu;
  if (nu > 0.0 && !(theta < cumulant_radius(nu))) throw DomainError("theta must be below theta0");
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
}

} // namespace

std::vector<double> cumulant_v(const ModelParams& p, double theta, std::span<const double> grid,
                               const OdeOptions& opts) {
  check_theta(p, theta);
  const double cd = p.c + p.d;
  const double bcd = p.b + cd;
  const double prod = p.b * cd;
  const double ac = p.a * p.c;
  auto rhs = [&](const OdeState& s, OdeState& ds, double) {
    ds[0] = s[1];
    ds[1] = -bcd * s[1] - prod * s[0] + prod * theta + ac * std::expm1(s[0]);
  };
  std::vector<double> times;
  if (grid.empty() || grid.front() > 0.0) times.push_back(0.0);
  times.insert(times.end(), grid.begin(), grid.end());
  const auto states = integrate_on_grid(rhs, OdeState{theta, 0.0}, times, opts);
  const std::size_t offset = times.size() - grid.size();
  std::vector<double> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(states[i + offset][0]);
  return out;
}

double log_mgf_n(const ModelParams& p, double theta, double t, const OdeOptions& opts) {
  check_theta(p, theta);
  if (theta == 0.0 || !(t > 0.0)) return 0.0;
  const double cd = p.c + p.d;
  const double bcd = p.b + cd;
  const double prod = p.b * cd;
  const double ac = p.a * p.c;
  // state: V, V', int_0^t h, int_0^t h(u) e^{-(c+d)(t-u)} du with h = e^V - 1
  auto rhs = [&](const OdeState& s, OdeState& ds, double) {
    const double h = std::expm1(s[0]);
    ds[0] = s[1];
    ds[1] = -bcd * s[1] - prod * s[0] + prod * theta + ac * h;
    ds[2] = h;
    ds[3] = h - cd * s[3];
  };
  const double times[] = {0.0, t};
  const auto states = integrate_on_grid(rhs, OdeState{theta, 0.0, 0.0, 0.0}, times, opts);
  return p.lambda0 * p.c / cd * (states[1][2] - states[1][3]);
}

StationaryStats::StationaryStats(const ModelParams& p) : p_(p) {
  const DerivedConstants k = derived_constants(p);
  nu_ = k.nu;
  rate_ = p.lambda0 * p.c / (p.c + p.d);
  mean_slope_ = k.stationary_rate;
  const AnalyticMoments am = analytic_moments(p);
  x_ = am.x;
  second_moment_ = am.x * am.x + am.y;
  second_moment_integral_ = second_moment_.integral();
}

double StationaryStats::tail_kernel(double tau) const {
  const double cd = p_.c + p_.d;
  const double b = p_.b;
  const double delta = cd - b;
  if (std::abs(delta) < 1e-10 * b) return (1.0 + b * tau) * std::exp(-b * tau);
  if (std::abs(delta * tau) < 1.0) return std::exp(-b * tau) * (1.0 - b * std::expm1(-delta * tau) / delta);
  return (cd * std::exp(-b * tau) - b * std::exp(-cd * tau)) / delta;
}

double StationaryStats::w_integral(double t) const {
  if (!(t > 0.0)) return 0.0;
  const ExpPoly increment = x_.shifted(t) - x_;
  const double squared_mean_part = (increment * increment).integral_to_infinity();
  double offspring_part = 0.0;
  if (nu_ > 0.0) {
    offspring_part = integrate([&](double u) { return tail_kernel(t - u) * second_moment_(u); }, 0.0, t, 1e-10);
  }
  return (squared_mean_part + nu_ * offspring_part) / (1.0 - nu_);
}

double StationaryStats::var(double t) const {
  if (!(t > 0.0)) return 0.0;
  return rate_ * (second_moment_integral_(t) + w_integral(t));
}

double StationaryStats::cov(double s, double t) const {
  if (s > t) throw ValidationError("cov(s, t) requires s <= t");
  return 0.5 * (var(t) - var(s) - var(t - s));
}

StationaryStats stationary_stats(const ModelParams& p) { return StationaryStats(p); }

} // namespace bhawkes
