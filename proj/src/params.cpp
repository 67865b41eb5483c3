#include "bhawkes/params.hpp"

#include <cmath>
#include <sstream>

#include "bhawkes/errors.hpp"
#include "bhawkes/special.hpp"

namespace bhawkes {

namespace {

std::string stability_message(double lhs, double rhs) {
  std::ostringstream os;
  os.precision(12);
  os << "stability condition a*c < b*(c+d) violated: " << lhs << " >= " << rhs;
  return os.str();
}

std::string field_message(const std::string& field, double value) {
  std::ostringstream os;
  os.precision(12);
  os << "parameter '" << field << "' out of range: " << value;
  return os.str();
}

void require(bool ok, const char* field, double value) {
  if (!ok) throw NonPositiveParameter(field, value);
}

} // namespace

StabilityViolation::StabilityViolation(double lhs, double rhs)
    : ValidationError(stability_message(lhs, rhs)), lhs_(lhs), rhs_(rhs) {}

NonPositiveParameter::NonPositiveParameter(std::string field, double value)
    : ValidationError(field_message(field, value)), field_(std::move(field)) {}

ModelParams validate_params(double lambda0, double a, double b, double c, double d) {
  // NaN fails every comparison below, so it is rejected as out of range.
  require(std::isfinite(lambda0) && lambda0 > 0.0, "lambda0", lambda0);
  require(std::isfinite(a) && a >= 0.0, "a", a);
  require(std::isfinite(b) && b > 0.0, "b", b);
  require(std::isfinite(c) && c > 0.0, "c", c);
  require(std::isfinite(d) && d >= 0.0, "d", d);
  const double lhs = a * c;
  const double rhs = b * (c + d);
  if (!(lhs < rhs)) throw StabilityViolation(lhs, rhs);
  return ModelParams{lambda0, a, b, c, d};
}

ModelParams validate_params(const ModelParams& raw) {
  return validate_params(raw.lambda0, raw.a, raw.b, raw.c, raw.d);
}

DerivedConstants derived_constants(const ModelParams& p) {
  DerivedConstants k;
  const double cd = p.c + p.d;
  const double ac = p.a * p.c;
  const double gap = p.b * cd - ac; // = q_minus * q_plus > 0
  k.nu = ac / (p.b * cd);
  k.Q = std::sqrt((p.b - cd) * (p.b - cd) + 4.0 * ac);
  k.q_plus = 0.5 * (p.b + cd + k.Q);
  // product form avoids cancellation when Q is close to b+c+d
  k.q_minus = gap / k.q_plus;
  k.theta0 = cumulant_radius(k.nu);
  k.ell_inf = p.b * cd * p.lambda0 / gap;
  k.g_inf = k.ell_inf / cd;
  k.x_inf = 1.0 / (1.0 - k.nu);
  k.y_inf = k.nu * k.x_inf * k.x_inf * k.x_inf;
  k.exec_fraction = p.c / cd;
  k.sigma2 = p.lambda0 * k.exec_fraction * k.x_inf * k.x_inf * k.x_inf;
  k.stationary_rate = p.lambda0 * p.c * p.b / gap;
  return k;
}

} // namespace bhawkes
