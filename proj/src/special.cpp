#include "bhawkes/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bhawkes/errors.hpp"

namespace bhawkes {

namespace {

const double kInvE = std::exp(-1.0);

double initial_guess(double x) {
  if (x < -0.32) {
    // series about the branch point
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }
  if (x < 3.0) return std::log1p(x);
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

} // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 <= 0.0) break; // only reachable through rounding at the branch point
    const double denom = ew * wp1 - 0.5 * (w + 2.0) * f / wp1;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w < -1.0 ? -1.0 : w;
}

double borel_pmf(long k, double nu) {
  if (k < 1) return 0.0;
  if (nu <= 0.0) return k == 1 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  const double log_p = (kd - 1.0) * std::log(kd * nu) - nu * kd - std::lgamma(kd + 1.0);
  return std::exp(log_p);
}

double cumulant_radius(double nu) {
  if (nu <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(nu) + nu - 1.0;
}

double v_infinity(double theta, double nu) {
  if (!(nu >= 0.0 && nu < 1.0)) throw DomainError("v_infinity: nu must lie in [0, 1)");
  if (nu == 0.0) return theta;
  if (!(theta < cumulant_radius(nu))) throw DomainError("v_infinity: theta must be below theta0");
  const double arg = std::max(-nu * std::exp(theta - nu), -kInvE);
  return theta - nu - lambert_w0(arg);
}

} // namespace bhawkes
