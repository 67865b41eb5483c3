#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bhawkes/params.hpp"
#include "bhawkes/rng.hpp"

namespace bhawkes {

/// One executed market order in a cascade. Nodes are stored flat; the
/// tree is encoded through parent indices (kNoParent for roots).
struct ClusterNode {
  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
  double birth_time = 0.0;
  std::size_t parent = kNoParent;
};

struct ClusterSample {
  ModelParams params;
  double horizon = 0.0;
  double lookback = 0.0;
  std::uint64_t seed = 0;
  long immigrant_count = 0; // limit-order immigrants on [-lookback, horizon]
  std::vector<ClusterNode> nodes;
  std::vector<std::size_t> roots;  // indices into nodes
  std::vector<double> order_times; // sorted execution times in [0, horizon]

  std::vector<std::size_t> children_of(std::size_t node) const;
};

/// Abort threshold for a single cascade.
inline constexpr std::size_t kMaxCascadeNodes = 10'000'000;

/// Offspring birth times of an individual born at parent_time: a Poisson(nu)
/// number of children, each delayed by Exp(b) + Exp(c+d). Births after
/// `horizon` are dropped, together with all their descendants.
std::vector<double> sample_offspring(const ModelParams& p, double parent_time, double horizon, Rng& rng);

/// Z_t = 1 + (descendants of a root at 0 born by t) as sorted birth times
/// of the descendants on [0, horizon]. An infinite horizon follows the
/// cascade to extinction. Throws ClusterOverflow past kMaxCascadeNodes.
std::vector<double> simulate_z_births(const ModelParams& p, double horizon, std::uint64_t seed);
std::vector<double> simulate_z_births(const ModelParams& p, double horizon, Rng& rng);

/// Z_t on the grid from the sorted descendant births.
std::vector<long> z_on_grid(std::span<const double> births, std::span<const double> grid);

/// Total progeny Z_inf of one cascade (Borel distributed).
long sample_total_progeny(const ModelParams& p, Rng& rng);

/// Market orders from the cluster representation. With lookback > 0,
/// immigrants also arrive on [-lookback, 0) and only orders in [0, horizon]
/// are kept, which approximates the stationary-increments version.
ClusterSample simulate_market_orders(const ModelParams& p, double horizon, std::uint64_t seed, double lookback = 0.0);

/// Number of retained orders at or before each grid time.
std::vector<long> n_counts_at(const ClusterSample& sample, std::span<const double> grid);

/// 40 / q_minus
double default_lookback(const ModelParams& p);

} // namespace bhawkes
