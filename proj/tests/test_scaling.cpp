#include <doctest.h>

#include <cmath>

#include "bhawkes/errors.hpp"
#include "bhawkes/estimate.hpp"
#include "bhawkes/exact_sim.hpp"
#include "bhawkes/moments.hpp"
#include "bhawkes/price.hpp"
#include "bhawkes/rng.hpp"
#include "bhawkes/scaling.hpp"
#include "bhawkes/stats.hpp"

using namespace bhawkes;
using doctest::Approx;

TEST_CASE("run_scaling validates its inputs") {
  const std::vector<long> scales{10};
  const std::vector<double> grid{1.0};
  CHECK_THROWS_AS(run_scaling(kPaperExample, std::vector<long>{0}, 100, grid, 1), ValidationError);
  CHECK_THROWS_AS(run_scaling(kPaperExample, scales, 99, grid, 1), ValidationError);
  CHECK_THROWS_AS(run_scaling(kPaperExample, scales, 100, std::vector<double>{1.0, 1.0}, 1), ValidationError);
  CHECK_THROWS_AS(run_scaling(kPaperExample, scales, 100, std::vector<double>{0.0}, 1), ValidationError);
  CHECK_THROWS_AS(run_scaling(kPaperExample, scales, 100, std::vector<double>{}, 1), ValidationError);
}

TEST_CASE("scaling report is centered, reproducible and consistent") {
  const std::vector<long> scales{1, 20};
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const ScalingReport r = run_scaling(kPaperExample, scales, 2000, grid, 42);
  REQUIRE(r.rows.size() == 6);
  CHECK(r.sigma2 == Approx(64.0 / 27.0));
  for (const auto& row : r.rows) {
    CHECK(std::abs(row.emp_mean) < 3 * row.mean_se);
    CHECK(row.emp_var >= 0.0);
    CHECK(row.predicted_var == Approx(r.sigma2 * row.t));
    CHECK(row.n_paths == 2000);
    // variance of the scaled count is Var N_{mt} / m
    const double target = var_n_cluster(kPaperExample, row.m * row.t) / row.m;
    CHECK(std::abs(row.emp_var - target) < 3.5 * row.var_se);
  }
  CHECK(r.rows[0].incr_cov == 0.0);
  CHECK(r.rows[3].m == 20);

  const ScalingReport again = run_scaling(kPaperExample, scales, 2000, grid, 42);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(again.rows[i].emp_mean == r.rows[i].emp_mean);
    CHECK(again.rows[i].emp_var == r.rows[i].emp_var);
    CHECK(again.rows[i].ks == r.rows[i].ks);
  }

  const auto xs = scaled_counts(kPaperExample, 20, 2.0, 2000, 42);
  const RunningStats s = summarize(xs);
  CHECK(s.mean() == Approx(r.rows[5].emp_mean).epsilon(1e-12).scale(1e-12));
  CHECK(s.variance() == Approx(r.rows[5].emp_var).epsilon(1e-12));
}

TEST_CASE("diffusion scaling at m = 200") {
  const std::vector<long> scales{1, 200};
  const std::vector<double> grid{1.0, 2.0};
  const ScalingReport r = run_scaling(kPaperExample, scales, 4000, grid, 7);
  const ScaleStats& big = r.rows[2];
  CHECK(big.m == 200);
  CHECK(big.emp_var == Approx(64.0 / 27.0).epsilon(0.10));
  CHECK(big.ks < r.rows[0].ks);
  // increments over disjoint windows decorrelate
  const ScaleStats& second = r.rows[3];
  const double se = std::sqrt(big.emp_var * (second.emp_var) / 4000.0) * 1.5;
  CHECK(std::abs(second.incr_cov) < 3 * se);
}

TEST_CASE("stationary scaling is centered by the stationary slope") {
  ScalingOptions opts;
  opts.stationary = true;
  opts.burn_in = 15.0;
  const std::vector<long> scales{5};
  const std::vector<double> grid{1.0, 3.0};
  const ScalingReport r = run_scaling(kPaperExample, scales, 3000, grid, 8, opts);
  CHECK(r.stationary);
  for (const auto& row : r.rows) CHECK(std::abs(row.emp_mean) < 3 * row.mean_se);
  const StationaryStats st(kPaperExample);
  CHECK(std::abs(r.rows[1].emp_var - st.var(15.0) / 5.0) < 3.5 * r.rows[1].var_se);
}

TEST_CASE("price kinds parse") {
  CHECK(parse_price_kind("midprice") == PriceKind::Midprice);
  CHECK(parse_price_kind("MIDPRICE") == PriceKind::Midprice);
  CHECK(parse_price_kind("inverse_depth") == PriceKind::InverseDepth);
  CHECK(parse_price_kind("Inverse-Depth") == PriceKind::InverseDepth);
  CHECK(parse_price_kind("geometric") == PriceKind::Geometric);
  CHECK_THROWS_AS(parse_price_kind("vwap"), UnsupportedKind);
  for (auto k : {PriceKind::Midprice, PriceKind::InverseDepth, PriceKind::Geometric})
    CHECK(parse_price_kind(to_string(k)) == k);
}

TEST_CASE("price paths are rebuilt from the two event logs") {
  const ModelParams plus = kPaperExample;
  const ModelParams minus{1.5, 0.5, 2.0, 1.0, 0.5};
  const auto grid = uniform_grid(40.0, 80);
  const std::uint64_t seed = 9;
  const double alpha = 0.5;
  const EventLog up = simulate_path(plus, 40.0, stream_seed(seed, 0));
  const EventLog down = simulate_path(minus, 40.0, stream_seed(seed, 1));

  const PricePath mid = simulate_price(plus, minus, PriceKind::Midprice, alpha, 40.0, grid, seed);
  const PricePath inv = simulate_price(plus, minus, PriceKind::InverseDepth, alpha, 40.0, grid, seed);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const SimState su = up.state_at(grid[j]), sd = down.state_at(grid[j]);
    CHECK(mid.values[j] == Approx((su.n - sd.n) * alpha / 2));
    const double units = mid.values[j] / (alpha / 2);
    CHECK(units == Approx(std::round(units)).epsilon(1e-12).scale(1e-12));

    double inv_expected = 0;
    for (const EventLog* log : {&up, &down}) {
      const double sign = log == &up ? 1.0 : -1.0;
      long gamma = 0;
      for (const auto& e : log->events) {
        if (e.time > grid[j]) break;
        if (e.kind == EventKind::Execution) inv_expected += sign / double(gamma);
        gamma = e.state.gamma;
      }
    }
    CHECK(std::isfinite(inv.values[j]));
    CHECK(inv.values[j] == Approx(inv_expected * alpha / 2).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("same streams on both sides cancel") {
  const auto grid = uniform_grid(30.0, 30);
  for (auto kind : {PriceKind::Midprice, PriceKind::InverseDepth}) {
    const PricePath path = simulate_price(kPaperExample, kPaperExample, kind, 1.0, 30.0, grid, 10, {}, true);
    for (double v : path.values) CHECK(v == 0.0);
  }
}

TEST_CASE("geometric price") {
  const auto grid = uniform_grid(5.0, 10);
  const GeometricSpec spec{2.0, 0.2};
  const PricePath one = simulate_price(kPaperExample, kPaperExample, PriceKind::Geometric, 0.1, 5.0, grid, 11, spec);
  CHECK(one.values.front() == Approx(2.0));
  for (double v : one.values) CHECK(v > 0.0);
  // closed form from the buy-side grid sample
  const GridSample g = sample_on_grid(kPaperExample, grid, stream_seed(11, 0));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double expected = 2.0 * std::pow(1.2, double(g.n[j])) * std::exp(0.1 * grid[j] - 0.2 * 1.0 * g.gamma_integral[j]);
    CHECK(one.values[j] == Approx(expected).epsilon(1e-12));
  }

  RunningStats disc;
  const double at[] = {5.0};
  for (int i = 0; i < 10000; ++i)
    disc.push(std::exp(-0.1 * 5.0) *
              simulate_price(kPaperExample, kPaperExample, PriceKind::Geometric, 0.1, 5.0, at, stream_seed(12, i), spec)
                  .values[0]);
  CHECK(std::abs(disc.mean() - 2.0) < 3 * disc.std_error());
}

TEST_CASE("midprice volatility") {
  const double m = 100.0;
  const double at[] = {m};
  RunningStats s;
  for (int i = 0; i < 4000; ++i)
    s.push(simulate_price(kPaperExample, kPaperExample, PriceKind::Midprice, 1.0, m, at, stream_seed(13, i)).values[0] /
           std::sqrt(m));
  // exact: alpha^2/4 * 2 Var N_m / m
  const double exact = 0.5 * var_n_cluster(kPaperExample, m) / m;
  CHECK(std::abs(s.variance() - exact) < 3 * s.variance_std_error());
  CHECK(exact == Approx(32.0 / 27.0).epsilon(0.02));
}

TEST_CASE("estimation recovers the preset") {
  const EventLog log = simulate_path(kPaperExample, 5e4, 14);
  CHECK(default_bin_width(kPaperExample) == Approx(50.0));
  const Estimates fine = estimate_params(log, 1.0);
  CHECK(fine.exec_ratio == Approx(0.5).epsilon(0.02));
  CHECK(std::abs(fine.exec_ratio - 0.5) < 0.01);
  CHECK(std::abs(fine.mean_depth - 4.0 / 3.0) < 0.02);
  CHECK(fine.bins == 50000);
  // short bins see only part of the clustering
  CHECK(fine.nu_hat < 0.15);

  const Estimates e = estimate_params(log, default_bin_width(kPaperExample));
  CHECK(std::abs(e.nu_hat - 0.25) < 0.05);
  CHECK(e.a_over_b == Approx(e.nu_hat * 2.0 / (2.0 * e.exec_ratio)).epsilon(1e-12));
  CHECK(e.executions + e.cancellations > 0);
  CHECK(e.vmr == Approx(e.bin_var / e.bin_mean));
}

TEST_CASE("estimation without feedback") {
  const ModelParams pure{2, 0, 2, 1, 1};
  const Estimates e = estimate_params(simulate_path(pure, 5e4, 15), default_bin_width(pure));
  CHECK(std::abs(e.nu_hat) < 0.05);
  CHECK(e.vmr == Approx(1.0).epsilon(0.15));
}

TEST_CASE("estimation errors and pooling") {
  CHECK_THROWS_AS(estimate_params(simulate_path(kPaperExample, 50.0, 16), 1.0), InsufficientData);
  CHECK_THROWS_AS(estimate_params(simulate_path(kPaperExample, 1000.0, 16), 50.0), InsufficientData);
  CHECK_THROWS_AS(estimate_params(std::vector<EventLog>{}, 1.0), InsufficientData);
  const std::vector<EventLog> logs{simulate_path(kPaperExample, 300.0, 17), simulate_path(kPaperExample, 300.0, 18)};
  const Estimates pooled = estimate_params(logs, 5.0);
  CHECK(pooled.bins == 120);
  CHECK(pooled.executions ==
        estimate_params(logs[0], 2.0).executions + estimate_params(logs[1], 2.0).executions);
}

TEST_CASE("estimates tighten with the horizon") {
  auto spread = [](double horizon) {
    RunningStats ratio, depth;
    for (int i = 0; i < 16; ++i) {
      const Estimates e = estimate_params(simulate_path(kPaperExample, horizon, stream_seed(19, i)), 5.0);
      ratio.push(e.exec_ratio);
      depth.push(e.mean_depth);
    }
    return std::pair{std::sqrt(ratio.variance()), std::sqrt(depth.variance())};
  };
  const auto [r3, d3] = spread(1e3);
  const auto [r4, d4] = spread(1e4);
  CHECK(r4 < r3 / 2.0);
  CHECK(d4 < d3 / 2.0);
}
