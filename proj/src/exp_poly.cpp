#include "bhawkes/exp_poly.hpp"

#include "bhawkes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bhawkes {

namespace {

bool same_rate(double r1, double r2) {
  return std::abs(r1 - r2) <= kRateMergeTolerance * std::max({1.0, std::abs(r1), std::abs(r2)});
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// int_0^t s^j e^{-delta s} ds for delta != 0, as terms in t (rates shifted by
// `base`, i.e. the result is multiplied by e^{-base t}).
void append_partial_gamma(std::vector<ExpTerm>& out, double coef, int j, double delta, double base) {
  const double jf = factorial(j);
  out.push_back({coef * jf / std::pow(delta, j + 1), 0, base});
  for (int i = 0; i <= j; ++i) {
    out.push_back({-coef * jf / (factorial(i) * std::pow(delta, j + 1 - i)), i, base + delta});
  }
}

} // namespace

ExpPoly::ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { normalize(); }

ExpPoly ExpPoly::constant(double value) { return ExpPoly({{value, 0, 0.0}}); }

ExpPoly ExpPoly::exponential(double coef, double rate) { return ExpPoly({{coef, 0, rate}}); }

void ExpPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& x, const ExpTerm& y) {
    return x.power != y.power ? x.power < y.power : x.rate < y.rate;
  });
  std::vector<ExpTerm> merged;
  for (const auto& t : terms_) {
    if (t.coef == 0.0) continue;
    if (!merged.empty() && merged.back().power == t.power && same_rate(merged.back().rate, t.rate)) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  // exact cancellation leaves zero terms behind
  std::erase_if(merged, [](const ExpTerm& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);
}

double ExpPoly::operator()(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double v = term.coef * std::exp(-term.rate * t);
    if (term.power > 0) v *= std::pow(t, term.power);
    sum += v;
  }
  return sum;
}

double ExpPoly::limit() const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    if (term.rate > 0.0) continue;
    if (term.power == 0) {
      sum += term.coef;
    } else {
      return term.coef > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    }
  }
  return sum;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

ExpPoly& ExpPoly::operator*=(double s) {
  for (auto& t : terms_) t.coef *= s;
  normalize();
  return *this;
}

ExpPoly operator*(const ExpPoly& lhs, const ExpPoly& rhs) {
  std::vector<ExpTerm> out;
  out.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& x : lhs.terms_)
    for (const auto& y : rhs.terms_) out.push_back({x.coef * y.coef, x.power + y.power, x.rate + y.rate});
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::integral() const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    if (t.rate == 0.0) {
      out.push_back({t.coef / (t.power + 1), t.power + 1, 0.0});
    } else {
      append_partial_gamma(out, t.coef, t.power, t.rate, 0.0);
    }
  }
  return ExpPoly(std::move(out));
}

double ExpPoly::integral_to_infinity() const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (!(t.rate > 0.0)) throw DomainError("ExpPoly::integral_to_infinity: non-decaying term");
    sum += t.coef * factorial(t.power) / std::pow(t.rate, t.power + 1);
  }
  return sum;
}

ExpPoly ExpPoly::convolve_exp(double rate) const {
  // int_0^t s^j e^{-r s} e^{-p (t-s)} ds = e^{-p t} int_0^t s^j e^{-(r-p) s} ds
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    if (same_rate(t.rate, rate)) {
      out.push_back({t.coef / (t.power + 1), t.power + 1, rate});
    } else {
      append_partial_gamma(out, t.coef, t.power, t.rate - rate, rate);
    }
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::shifted(double shift) const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    const double scale = t.coef * std::exp(-t.rate * shift);
    for (int i = 0; i <= t.power; ++i) {
      out.push_back({scale * binomial(t.power, i) * std::pow(shift, t.power - i), i, t.rate});
    }
  }
  return ExpPoly(std::move(out));
}

} // namespace bhawkes
