#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bhawkes {

/// Welford accumulator.
class RunningStats {
public:
  void push(double x);
  void merge(const RunningStats& other);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance.
  double variance() const;
  double std_error() const;
  /// Standard error of the sample variance, from the fourth central moment.
  double variance_std_error() const;

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

RunningStats summarize(std::span<const double> xs);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;
};

/// Goodness of fit of observed category counts against probabilities.
/// The last probability is typically the tail mass.
ChiSquareResult chi_square_gof(std::span<const long> observed, std::span<const double> probs);

/// Two-sample chi-square on integer-valued samples. Adjacent values are
/// pooled until each bin holds at least `min_pooled` observations combined.
ChiSquareResult chi_square_two_sample(std::span<const long> a, std::span<const long> b, long min_pooled = 20);

/// sup |F_n(x) - Phi(x)| against the standard normal.
double ks_distance_normal(std::vector<double> xs);

/// P(Chi2_dof > x)
double chi_square_sf(double x, int dof);

} // namespace bhawkes
