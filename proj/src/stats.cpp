#include "bhawkes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

namespace bhawkes {

void RunningStats::push(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

void RunningStats::merge(const RunningStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  const double d2 = delta * delta, d3 = d2 * delta, d4 = d2 * d2;
  const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + o.m3_ + d3 * na * nb * (na - nb) / (n * n) + 3.0 * delta * (na * o.m2_ - nb * m2_) / n;
  const double m4 = m4_ + o.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) + 4.0 * delta * (na * o.m3_ - nb * m3_) / n;
  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += o.n_;
}

double RunningStats::variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

double RunningStats::std_error() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double RunningStats::variance_std_error() const {
  if (n_ < 4) return 0.0;
  const double n = static_cast<double>(n_);
  const double mu4 = m4_ / n;
  const double s2 = m2_ / n;
  const double v = (mu4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

RunningStats summarize(std::span<const double> xs) {
  RunningStats s;
  for (double x : xs) s.push(x);
  return s;
}

double chi_square_sf(double x, int dof) {
  if (dof <= 0) return 1.0;
  if (x <= 0.0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquareResult chi_square_gof(std::span<const long> observed, std::span<const double> probs) {
  ChiSquareResult r;
  double total = 0.0;
  for (long o : observed) total += static_cast<double>(o);
  for (std::size_t i = 0; i < observed.size() && i < probs.size(); ++i) {
    const double expected = total * probs[i];
    if (expected <= 0.0) continue;
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
    ++r.bins;
  }
  r.dof = r.bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_two_sample(std::span<const long> a, std::span<const long> b, long min_pooled) {
  std::map<long, std::pair<long, long>> counts;
  for (long v : a) ++counts[v].first;
  for (long v : b) ++counts[v].second;

  std::vector<std::pair<long, long>> bins;
  std::pair<long, long> acc{0, 0};
  for (const auto& [value, c] : counts) {
    acc.first += c.first;
    acc.second += c.second;
    if (acc.first + acc.second >= min_pooled) {
      bins.push_back(acc);
      acc = {0, 0};
    }
  }
  if (acc.first + acc.second > 0) {
    if (bins.empty()) {
      bins.push_back(acc);
    } else {
      bins.back().first += acc.first;
      bins.back().second += acc.second;
    }
  }

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  ChiSquareResult r;
  for (const auto& [ca, cb] : bins) {
    const double diff = ka * static_cast<double>(ca) - kb * static_cast<double>(cb);
    r.statistic += diff * diff / static_cast<double>(ca + cb);
  }
  r.bins = static_cast<int>(bins.size());
  r.dof = r.bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double ks_distance_normal(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    // ties (the samples are lattice-valued) move the empirical CDF in one jump
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double phi = 0.5 * std::erfc(-xs[i] / std::sqrt(2.0));
    d = std::max({d, std::abs(phi - static_cast<double>(i) / n), std::abs(static_cast<double>(j) / n - phi)});
    i = j;
  }
  return d;
}

} // namespace bhawkes
