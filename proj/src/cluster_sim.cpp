#include "bhawkes/cluster_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bhawkes/errors.hpp"

namespace bhawkes {

std::vector<std::size_t> ClusterSample::children_of(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent == node) out.push_back(i);
  return out;
}

namespace {

double offspring_mean(const ModelParams& p) { return p.a * p.c / (p.b * (p.c + p.d)); }

// Appends the cascade below nodes[first] to `nodes`, breadth first.
void grow_cascade(const ModelParams& p, double horizon, Rng& rng, std::vector<ClusterNode>& nodes, std::size_t first) {
  const double nu = offspring_mean(p);
  if (nu <= 0.0) return;
  const double cd = p.c + p.d;
  std::size_t cascade_size = 1;
  for (std::size_t i = first; i < nodes.size(); ++i) {
    const double parent_time = nodes[i].birth_time;
    const long count = rng.poisson(nu);
    for (long k = 0; k < count; ++k) {
      const double birth = parent_time + rng.exponential(p.b) + rng.exponential(cd);
      if (birth > horizon) continue;
      if (++cascade_size > kMaxCascadeNodes)
        throw ClusterOverflow("cascade exceeded " + std::to_string(kMaxCascadeNodes) + " nodes");
      nodes.push_back({birth, i});
    }
  }
}

} // namespace

std::vector<double> sample_offspring(const ModelParams& p, double parent_time, double horizon, Rng& rng) {
  std::vector<double> out;
  const double nu = offspring_mean(p);
  if (nu <= 0.0) return out;
  const long count = rng.poisson(nu);
  for (long k = 0; k < count; ++k) {
    const double birth = parent_time + rng.exponential(p.b) + rng.exponential(p.c + p.d);
    if (birth <= horizon) out.push_back(birth);
  }
  return out;
}

std::vector<double> simulate_z_births(const ModelParams& p, double horizon, Rng& rng) {
  std::vector<ClusterNode> nodes{{0.0, ClusterNode::kNoParent}};
  grow_cascade(p, horizon, rng, nodes, 0);
  std::vector<double> births;
  births.reserve(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) births.push_back(nodes[i].birth_time);
  std::sort(births.begin(), births.end());
  return births;
}

std::vector<double> simulate_z_births(const ModelParams& p, double horizon, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_z_births(p, horizon, rng);
}

std::vector<long> z_on_grid(std::span<const double> births, std::span<const double> grid) {
  std::vector<long> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(1 + (std::upper_bound(births.begin(), births.end(), t) - births.begin()));
  return out;
}

long sample_total_progeny(const ModelParams& p, Rng& rng) {
  // Only the count matters, so track a generation-free frontier size.
  const double nu = offspring_mean(p);
  std::size_t total = 1;
  std::size_t pending = 1;
  while (pending > 0) {
    --pending;
    const long kids = rng.poisson(nu);
    total += static_cast<std::size_t>(kids);
    pending += static_cast<std::size_t>(kids);
    if (total > kMaxCascadeNodes)
      throw ClusterOverflow("cascade exceeded " + std::to_string(kMaxCascadeNodes) + " nodes");
  }
  return static_cast<long>(total);
}

ClusterSample simulate_market_orders(const ModelParams& p, double horizon, std::uint64_t seed, double lookback) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw HorizonNonPositive("horizon must be nonnegative");
  if (!(lookback >= 0.0) || !std::isfinite(lookback)) throw ValidationError("lookback must be nonnegative");
  ClusterSample s;
  s.params = p;
  s.horizon = horizon;
  s.lookback = lookback;
  s.seed = seed;

  Rng rng(seed);
  const double cd = p.c + p.d;
  const double exec_prob = p.c / cd;
  // immigrants as a sequence of exponential gaps on [-lookback, horizon]
  double t = -lookback;
  while (true) {
    t += rng.exponential(p.lambda0);
    if (t > horizon) break;
    ++s.immigrant_count;
    const double stay = rng.exponential(cd);
    if (!rng.bernoulli(exec_prob)) continue; // cancelled
    const double exec_time = t + stay;
    if (exec_time > horizon) continue;
    s.roots.push_back(s.nodes.size());
    s.nodes.push_back({exec_time, ClusterNode::kNoParent});
    grow_cascade(p, horizon, rng, s.nodes, s.nodes.size() - 1);
  }
  for (const auto& node : s.nodes)
    if (node.birth_time >= 0.0) s.order_times.push_back(node.birth_time);
  std::sort(s.order_times.begin(), s.order_times.end());
  return s;
}

std::vector<long> n_counts_at(const ClusterSample& sample, std::span<const double> grid) {
  std::vector<long> out;
  out.reserve(grid.size());
  const auto& times = sample.order_times;
  // Ntilde_0 = 0: orders exactly at time 0 are not part of the increment
  const long at_zero = sample.lookback > 0.0
                           ? std::upper_bound(times.begin(), times.end(), 0.0) - times.begin()
                           : 0;
  for (double t : grid)
    out.push_back(static_cast<long>(std::upper_bound(times.begin(), times.end(), t) - times.begin()) - at_zero);
  return out;
}

double default_lookback(const ModelParams& p) { return 40.0 / derived_constants(p).q_minus; }

} // namespace bhawkes
