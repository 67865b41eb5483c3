#pragma once

#include <vector>

namespace bhawkes {

/// coef * t^power * exp(-rate * t)
struct ExpTerm {
  double coef = 0.0;
  int power = 0;
  double rate = 0.0;
};

/// Finite sums of ExpTerm with nonnegative rates. The moment functions of
/// the model (x_t, y_t, the first moments) all live in this class, which
/// makes their integrals and convolutions available in closed form.
class ExpPoly {
public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpTerm> terms);

  static ExpPoly constant(double value);
  static ExpPoly exponential(double coef, double rate);

  double operator()(double t) const;
  /// Limit as t -> inf; +/-inf when a polynomial term with rate 0 survives.
  double limit() const;

  const std::vector<ExpTerm>& terms() const { return terms_; }

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator*=(double s);
  friend ExpPoly operator+(ExpPoly lhs, const ExpPoly& rhs) { return lhs += rhs; }
  friend ExpPoly operator-(ExpPoly lhs, const ExpPoly& rhs) { return lhs += rhs * -1.0; }
  friend ExpPoly operator*(ExpPoly lhs, double s) { return lhs *= s; }
  friend ExpPoly operator*(double s, ExpPoly rhs) { return rhs *= s; }
  friend ExpPoly operator*(const ExpPoly& lhs, const ExpPoly& rhs);

  /// t -> int_0^t f(s) ds
  ExpPoly integral() const;
  /// int_0^inf f(s) ds; requires every term to have a positive rate.
  double integral_to_infinity() const;
  /// t -> int_0^t f(s) exp(-rate (t - s)) ds
  ExpPoly convolve_exp(double rate) const;
  /// r -> f(r + shift)
  ExpPoly shifted(double shift) const;

private:
  void normalize();
  std::vector<ExpTerm> terms_;
};

/// Rates closer than this (relative) are treated as equal.
inline constexpr double kRateMergeTolerance = 1e-9;

} // namespace bhawkes
