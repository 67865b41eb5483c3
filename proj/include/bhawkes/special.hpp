#pragma once

namespace bhawkes {

/// Principal branch W0 of the Lambert-W function on [-1/e, inf).
/// Throws DomainError below -1/e.
double lambert_w0(double x);

/// P(Z = k) for the Borel law with parameter nu, k >= 1.
/// nu = 0 is the point mass at 1.
double borel_pmf(long k, double nu);

/// log E[exp(theta Z_inf)] for Z_inf ~ Borel(nu), theta < theta0(nu).
double v_infinity(double theta, double nu);

/// -ln(nu) + nu - 1, +inf at nu = 0.
double cumulant_radius(double nu);

} // namespace bhawkes
