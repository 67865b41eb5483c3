#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bhawkes/cluster_sim.hpp"
#include "bhawkes/errors.hpp"
#include "bhawkes/moments.hpp"
#include "bhawkes/special.hpp"
#include "bhawkes/stats.hpp"

using namespace bhawkes;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within(const RunningStats& s, double expected, double k = 3.0) {
  return std::abs(s.mean() - expected) <= k * s.std_error();
}

} // namespace

TEST_CASE("offspring counts and delays") {
  Rng rng(1);
  CHECK(sample_offspring(ModelParams{2, 0, 2, 1, 1}, 0.0, kInf, rng).empty());

  RunningStats count, delay;
  for (int i = 0; i < 1000000; ++i) {
    const auto kids = sample_offspring(kPaperExample, 3.0, kInf, rng);
    count.push(double(kids.size()));
    for (double t : kids) delay.push(t - 3.0);
  }
  CHECK(within(count, 0.25));
  CHECK(within(delay, 1.0)); // 1/b + 1/(c+d)
  // sum of two independent exponentials: variance 1/b^2 + 1/(c+d)^2
  CHECK(std::abs(delay.variance() - 0.5) < 3 * delay.variance_std_error());

  for (int i = 0; i < 1000; ++i)
    for (double t : sample_offspring(kPaperExample, 1.0, 1.5, rng)) REQUIRE((t > 1.0 && t <= 1.5));
}

TEST_CASE("single cascades") {
  const auto births = simulate_z_births(kPaperExample, 10.0, 2);
  CHECK(std::is_sorted(births.begin(), births.end()));
  for (double t : births) CHECK((t > 0.0 && t <= 10.0));
  CHECK(births == simulate_z_births(kPaperExample, 10.0, 2));
  const double zero[] = {0.0};
  CHECK(z_on_grid(births, zero)[0] == 1);
  const double grid[] = {0.0, 1.0, 10.0};
  const auto z = z_on_grid(births, grid);
  CHECK(z.back() == long(births.size()) + 1);
  CHECK(std::is_sorted(z.begin(), z.end()));
  CHECK(simulate_z_births(ModelParams{2, 0, 2, 1, 1}, kInf, 3).empty());
}

TEST_CASE("Z_t mean and variance match the closed forms") {
  const double grid[] = {1.0, 2.0, 5.0};
  const int n = 100000;
  RunningStats s[3];
  for (int i = 0; i < n; ++i) {
    const auto z = z_on_grid(simulate_z_births(kPaperExample, 5.0, stream_seed(4, i)), grid);
    for (int j = 0; j < 3; ++j) s[j].push(double(z[j]));
  }
  for (int j = 0; j < 3; ++j) {
    CHECK(within(s[j], cluster_mean(kPaperExample, grid[j])));
    CHECK(std::abs(s[j].variance() - cluster_var(kPaperExample, grid[j])) < 3 * s[j].variance_std_error());
  }
}

TEST_CASE("total progeny follows the Borel law") {
  const double nu = 0.25;
  const int n = 100000;
  std::vector<long> finite(9, 0), extinct(9, 0);
  Rng rng(5);
  RunningStats total;
  for (int i = 0; i < n; ++i) {
    const long z = sample_total_progeny(kPaperExample, rng);
    total.push(double(z));
    ++extinct[std::min<long>(z, 9) - 1];
    // a long finite horizon (60 / q_minus) gives the same law up to a negligible tail
    const long zt = 1 + long(simulate_z_births(kPaperExample, 60.0, stream_seed(6, i)).size());
    ++finite[std::min<long>(zt, 9) - 1];
  }
  std::vector<double> probs;
  double mass = 0;
  for (long k = 1; k <= 8; ++k) mass += (probs.emplace_back(borel_pmf(k, nu)), probs.back());
  probs.push_back(1.0 - mass);
  CHECK(chi_square_gof(extinct, probs).p_value > 1e-3);
  CHECK(chi_square_gof(finite, probs).p_value > 1e-3);
  CHECK(within(total, 4.0 / 3.0));
}

TEST_CASE("runaway cascades hit the node guard") {
  const ModelParams super{1.0, 4.0, 1.0, 1.0, 0.0}; // nu = 4, deliberately unvalidated
  int overflows = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    try {
      sample_total_progeny(super, rng);
    } catch (const ClusterOverflow&) {
      ++overflows;
    }
  }
  CHECK(overflows >= 4);
  bool thrown = false;
  for (std::uint64_t seed = 0; seed < 5 && !thrown; ++seed) {
    try {
      simulate_z_births(super, kInf, seed);
    } catch (const ClusterOverflow&) {
      thrown = true;
    }
  }
  CHECK(thrown);
}

TEST_CASE("node guard stays silent for subcritical cascades") {
  const ModelParams p{1.0, 1.8, 1.0, 1.0, 1.0}; // nu = 0.9
  Rng rng(7);
  RunningStats total;
  for (int i = 0; i < 1000000; ++i) total.push(double(sample_total_progeny(p, rng)));
  CHECK(within(total, 10.0));
}

TEST_CASE("market orders from immigrants") {
  const int n = 10000;
  const double cd = 2.0, T = 10.0;
  RunningStats immigrants, roots;
  for (int i = 0; i < n; ++i) {
    const ClusterSample s = simulate_market_orders(kPaperExample, T, stream_seed(8, i));
    immigrants.push(double(s.immigrant_count));
    roots.push(double(s.roots.size()));
  }
  CHECK(within(immigrants, 20.0));
  // executed immigrants whose execution also falls inside [0, T]
  CHECK(within(roots, 2.0 * 0.5 * (T - (1.0 - std::exp(-cd * T)) / cd)));
  CHECK(roots.mean() / immigrants.mean() == Approx(0.5).epsilon(0.05));
}

TEST_CASE("cluster sample structure") {
  const ClusterSample s = simulate_market_orders(kPaperExample, 30.0, 9);
  CHECK(s.order_times.size() == s.nodes.size());
  CHECK(std::is_sorted(s.order_times.begin(), s.order_times.end()));
  std::size_t root_count = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& node = s.nodes[i];
    if (node.parent == ClusterNode::kNoParent) {
      ++root_count;
    } else {
      REQUIRE(node.parent < i);
      REQUIRE(node.birth_time > s.nodes[node.parent].birth_time);
    }
  }
  CHECK(root_count == s.roots.size());
  std::size_t via_children = s.roots.size();
  for (std::size_t i = 0; i < s.nodes.size(); ++i) via_children += s.children_of(i).size();
  CHECK(via_children == s.nodes.size());

  const ClusterSample again = simulate_market_orders(kPaperExample, 30.0, 9);
  CHECK(again.order_times == s.order_times);
  CHECK_THROWS_AS(simulate_market_orders(kPaperExample, -1.0, 9), HorizonNonPositive);
  CHECK_THROWS_AS(simulate_market_orders(kPaperExample, 1.0, 9, -2.0), ValidationError);
}

TEST_CASE("n_counts_at") {
  ClusterSample empty;
  empty.horizon = 5.0;
  const double grid[] = {0.0, 2.5, 5.0};
  CHECK(n_counts_at(empty, grid) == std::vector<long>{0, 0, 0});

  const ClusterSample s = simulate_market_orders(kPaperExample, 20.0, 10);
  const double end[] = {20.0};
  CHECK(n_counts_at(s, end)[0] == long(s.order_times.size()));
  std::vector<double> fine;
  for (int i = 0; i <= 200; ++i) fine.push_back(0.1 * i);
  const auto counts = n_counts_at(s, fine);
  CHECK(std::is_sorted(counts.begin(), counts.end()));
}

TEST_CASE("mean count matches the first-moment closed form") {
  const int n = 20000;
  RunningStats n10;
  for (int i = 0; i < n; ++i) n10.push(double(simulate_market_orders(kPaperExample, 10.0, stream_seed(11, i)).order_times.size()));
  CHECK(within(n10, first_moments(kPaperExample, 10.0).m));
}

TEST_CASE("lookback gives time-shift invariant increments") {
  const double lookback = default_lookback(kPaperExample);
  CHECK(lookback == Approx(40.0));
  const int n = 20000;
  const double grid[] = {0.0, 1.0, 2.0, 3.0, 5.0, 6.0};
  RunningStats inc[3];
  for (int i = 0; i < n; ++i) {
    const ClusterSample s = simulate_market_orders(kPaperExample, 6.0, stream_seed(12, i), lookback);
    const auto c = n_counts_at(s, grid);
    REQUIRE(c[0] == 0);
    inc[0].push(double(c[1] - c[0]));
    inc[1].push(double(c[3] - c[2]));
    inc[2].push(double(c[5] - c[4]));
  }
  const double slope = StationaryStats(kPaperExample).mean_slope();
  for (const auto& s : inc) CHECK(within(s, slope));
  // without lookback the first unit interval is visibly slower
  RunningStats cold;
  for (int i = 0; i < n; ++i) cold.push(double(n_counts_at(simulate_market_orders(kPaperExample, 1.0, stream_seed(13, i)), grid)[1]));
  CHECK(cold.mean() < slope - 10 * cold.std_error());
}
