#pragma once

#include <span>
#include <vector>

#include "bhawkes/exp_poly.hpp"
#include "bhawkes/numerics.hpp"
#include "bhawkes/params.hpp"

namespace bhawkes {

/// Closed-form moment functions of t, all as exponential polynomials.
///   kernel(t)  = (e^{-q- t} - e^{-q+ t}) / (q+ - q-)   (t e^{-q t} when q- = q+)
///   ell, g, m  = E Lambda_t, E Gamma_t, E N_t from the empty book
///   x, y       = E Z_t, Var Z_t of the cluster process
struct AnalyticMoments {
  ExpPoly kernel;
  ExpPoly ell;
  ExpPoly g;
  ExpPoly m;
  ExpPoly x;
  ExpPoly y;
};

AnalyticMoments analytic_moments(const ModelParams& p);

struct FirstMoments {
  double ell = 0.0;
  double g = 0.0;
  double m = 0.0;
};

FirstMoments first_moments(const ModelParams& p, double t);

/// Limits as t -> inf. m and wbar grow linearly; their slopes are given.
struct MomentAsymptotes {
  double ell = 0.0;
  double g = 0.0;
  double m_slope = 0.0;
  double pbar = 0.0;
  double qbar = 0.0;
  double rbar = 0.0;
  double ubar = 0.0;
  double vbar = 0.0;
  double wbar_slope = 0.0;
  double x = 1.0;
  double y = 0.0;
};

MomentAsymptotes moment_asymptotes(const ModelParams& p);

struct MomentCurves {
  std::vector<double> grid;
  std::vector<double> ell, g, m;
  std::vector<double> pbar; // Cov(Lambda, Gamma)
  std::vector<double> qbar; // Var Lambda
  std::vector<double> rbar; // Var Gamma
  std::vector<double> ubar; // Cov(Lambda, N)
  std::vector<double> vbar; // Cov(Gamma, N)
  std::vector<double> wbar; // Var N
  std::vector<double> x, y;
  MomentAsymptotes asymptotes;
};

/// Centered second moments from their linear ODE system, started from the
/// empty book (all zero) and forced by the analytic ell_t and g_t.
/// The grid must start at 0 and be nondecreasing.
MomentCurves second_moments(const ModelParams& p, std::span<const double> grid, const OdeOptions& opts = {});

/// Uniform grid 0, dt, ..., t_max (t_max included).
std::vector<double> uniform_grid(double t_max, std::size_t intervals);

double cluster_mean(const ModelParams& p, double t);
double cluster_var(const ModelParams& p, double t);

/// Var N_t from the cluster representation, by adaptive quadrature of
/// (lambda0 c/(c+d)) int_0^t (y_u + x_u^2)(1 - e^{-(c+d)(t-u)}) du.
double var_n_cluster(const ModelParams& p, double t, double rel_tol = 1e-10);

/// V_t(theta) = log E exp(theta Z_t) on the grid, from the second-order
/// cumulant ODE. Throws DomainError for theta >= theta0.
std::vector<double> cumulant_v(const ModelParams& p, double theta, std::span<const double> grid,
                               const OdeOptions& opts = {});

/// log E exp(theta N_t). The time integral against e^{V_u} - 1 is carried
/// along with the cumulant ODE as two extra state components.
double log_mgf_n(const ModelParams& p, double theta, double t, const OdeOptions& opts = {});

/// Statistics of the stationary-increments version Ntilde.
class StationaryStats {
public:
  explicit StationaryStats(const ModelParams& p);

  /// lambda0 c b / (b(c+d) - ac)
  double mean_slope() const { return mean_slope_; }
  double mean(double t) const { return mean_slope_ * t; }
  /// Var Ntilde_t
  double var(double t) const;
  /// Cov(Ntilde_s, Ntilde_t - Ntilde_s) for 0 <= s <= t.
  double cov(double s, double t) const;
  /// int_0^inf E[(Z_{r+t} - Z_r)^2] dr
  double w_integral(double t) const;
  /// Kernel ((c+d) e^{-b tau} - b e^{-(c+d) tau}) / (c+d-b), with its b = c+d limit.
  double tail_kernel(double tau) const;

private:
  ModelParams p_;
  double nu_;
  double rate_; // lambda0 c / (c+d)
  double mean_slope_;
  ExpPoly x_;
  ExpPoly second_moment_; // x^2 + y
  ExpPoly second_moment_integral_;
};

StationaryStats stationary_stats(const ModelParams& p);

} // namespace bhawkes
