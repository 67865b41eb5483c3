#include "bhawkes/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>

#include "bhawkes/cluster_sim.hpp"
#include "bhawkes/config.hpp"
#include "bhawkes/estimate.hpp"
#include "bhawkes/exact_sim.hpp"
#include "bhawkes/moments.hpp"
#include "bhawkes/parallel.hpp"
#include "bhawkes/price.hpp"
#include "bhawkes/scaling.hpp"
#include "bhawkes/special.hpp"
#include "bhawkes/stats.hpp"

namespace bhawkes {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

CheckResult make(std::string name, bool ok, std::string detail) {
  return CheckResult{std::move(name), ok, std::move(detail), 0.0};
}

CheckResult within_se(const std::string& name, const RunningStats& s, double expected, double k = 3.0) {
  const double se = s.std_error();
  const double z = se > 0 ? (s.mean() - expected) / se : (s.mean() == expected ? 0.0 : INFINITY);
  return make(name, std::abs(z) <= k, fmt("mean %.6g vs %.6g, z = %.2f", s.mean(), expected, z));
}

CheckResult within_rel(const std::string& name, double value, double expected, double rel) {
  const double err = std::abs(value - expected) / std::abs(expected);
  return make(name, err <= rel, fmt("%.10g vs %.10g, rel err %.3g (tol %.3g)", value, expected, err, rel));
}

CheckResult within_abs(const std::string& name, double value, double expected, double tol) {
  const double err = std::abs(value - expected);
  return make(name, err <= tol, fmt("%.10g vs %.10g, abs err %.3g (tol %.3g)", value, expected, err, tol));
}

// Seed tags keep the checks on disjoint streams.
enum Tag : std::uint64_t {
  kFirst = 1, kVar, kDualExact, kDualCluster, kBorel, kCumulant, kDiffusion, kStationary, kPrice, kGeometric,
  kEstimate, kProps
};

} // namespace

std::size_t scaled_count(std::size_t full, const VerifyOptions& opts) {
  const double n = std::round(static_cast<double>(full) * opts.scale);
  return std::max<std::size_t>(100, static_cast<std::size_t>(n));
}

std::vector<CheckResult> check_first_moments(const ModelParams& p, const VerifyOptions& opts) {
  const std::vector<double> grid{1.0, 5.0, 10.0, 50.0};
  const std::size_t n = scaled_count(20000, opts);
  const auto samples = parallel_map(n, [&](std::size_t i) {
    return sample_on_grid(p, grid, stream_seed(opts.seed, kFirst, i));
  });
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    RunningStats sl, sg, sn;
    for (const auto& s : samples) {
      sl.push(s.lambda[j]);
      sg.push(static_cast<double>(s.gamma[j]));
      sn.push(static_cast<double>(s.n[j]));
    }
    const FirstMoments fm = first_moments(p, grid[j]);
    const std::string at = fmt(" at t=%g", grid[j]);
    out.push_back(within_se("E Lambda" + at, sl, fm.ell));
    out.push_back(within_se("E Gamma" + at, sg, fm.g));
    out.push_back(within_se("E N" + at, sn, fm.m));
  }
  return out;
}

CheckResult check_variance_ratio(const ModelParams& p, double t, double rel_tol) {
  const double grid[] = {0.0, t};
  const MomentCurves mc = second_moments(p, grid);
  return within_rel(fmt("ODE Var N_t / t at t=%g vs sigma^2", t), mc.wbar.back() / t,
                    derived_constants(p).sigma2, rel_tol);
}

std::vector<CheckResult> check_variance_growth(const ModelParams& p, const VerifyOptions& opts) {
  const double sigma2 = derived_constants(p).sigma2;
  std::vector<CheckResult> out;
  const double grid[] = {0.0, 40.0, 50.0};
  const MomentCurves mc = second_moments(p, grid);
  out.push_back(within_rel("ODE Var N slope over [40,50] vs sigma^2", (mc.wbar[2] - mc.wbar[1]) / 10.0, sigma2, 1e-3));
  out.push_back(within_rel("ODE Var N_50 vs cluster quadrature", mc.wbar[2], var_n_cluster(p, 50.0), 1e-6));

  const std::size_t n = scaled_count(20000, opts);
  const double at50[] = {50.0};
  const auto counts = parallel_map(n, [&](std::size_t i) {
    return static_cast<double>(sample_on_grid(p, at50, stream_seed(opts.seed, kVar, i)).n[0]);
  });
  const RunningStats s = summarize(counts);
  out.push_back(within_rel("exact-sim Var N_50 / 50 vs sigma^2", s.variance() / 50.0, sigma2, 0.10));
  return out;
}

std::vector<CheckResult> check_dual_simulators(const ModelParams& p, const VerifyOptions& opts) {
  const std::size_t n = scaled_count(100000, opts);
  const double t5[] = {5.0};
  const auto exact = parallel_map(n, [&](std::size_t i) {
    return sample_on_grid(p, t5, stream_seed(opts.seed, kDualExact, i)).n[0];
  });
  const auto cluster = parallel_map(n, [&](std::size_t i) {
    return static_cast<long>(simulate_market_orders(p, 5.0, stream_seed(opts.seed, kDualCluster, i)).order_times.size());
  });
  const ChiSquareResult chi = chi_square_two_sample(exact, cluster);
  std::vector<CheckResult> out;
  out.push_back(make("N_5 exact vs cluster chi-square", chi.p_value > 1e-3,
                     fmt("stat %.2f, dof %d, p = %.4f (need > 0.001)", chi.statistic, chi.dof, chi.p_value)));
  RunningStats se, sc;
  for (long v : exact) se.push(static_cast<double>(v));
  for (long v : cluster) sc.push(static_cast<double>(v));
  const double comb = std::hypot(se.std_error(), sc.std_error());
  const double z = (se.mean() - sc.mean()) / comb;
  out.push_back(make("N_5 exact vs cluster means", std::abs(z) <= 3.0,
                     fmt("%.5f vs %.5f, z = %.2f", se.mean(), sc.mean(), z)));
  return out;
}

std::vector<CheckResult> check_borel_law(const ModelParams& p, const VerifyOptions& opts) {
  const std::size_t n = scaled_count(100000, opts);
  const double nu = derived_constants(p).nu;
  constexpr long kMax = 8;
  std::vector<long> observed(kMax + 1, 0);
  Rng rng(stream_seed(opts.seed, kBorel));
  for (std::size_t i = 0; i < n; ++i) {
    const long z = sample_total_progeny(p, rng);
    ++observed[static_cast<std::size_t>(std::min(z, kMax + 1) - 1)];
  }
  std::vector<double> probs;
  double mass = 0.0;
  for (long k = 1; k <= kMax; ++k) {
    probs.push_back(borel_pmf(k, nu));
    mass += probs.back();
  }
  probs.push_back(std::max(0.0, 1.0 - mass));
  const ChiSquareResult chi = chi_square_gof(observed, probs);
  return {make("Z_inf vs Borel pmf chi-square", chi.p_value > 1e-3,
               fmt("stat %.2f, dof %d, p = %.4f (need > 0.001)", chi.statistic, chi.dof, chi.p_value))};
}

std::vector<CheckResult> check_cumulants(const ModelParams& p, const VerifyOptions& opts) {
  const std::vector<double> grid{0.0, 1.0, 5.0, 60.0};
  const auto v = cumulant_v(p, -1.0, grid);
  const std::size_t n = scaled_count(100000, opts);
  const double times[] = {1.0, 5.0};
  const auto z = parallel_map(n, [&](std::size_t i) {
    return z_on_grid(simulate_z_births(p, 5.0, stream_seed(opts.seed, kCumulant, i)), times);
  });
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < 2; ++j) {
    RunningStats s;
    for (const auto& row : z) s.push(std::exp(-static_cast<double>(row[j])));
    out.push_back(within_se(fmt("exp V_t(-1) vs MC E exp(-Z_t) at t=%g", times[j]), s, std::exp(v[j + 1])));
  }
  out.push_back(within_abs("V_60(-1) vs Lambert-W limit", v[3], v_infinity(-1.0, derived_constants(p).nu), 1e-6));
  return out;
}

std::vector<CheckResult> check_second_moment_limits(const ModelParams& p, const VerifyOptions&) {
  const MomentCurves mc = second_moments(p, uniform_grid(50.0, 500));
  const MomentAsymptotes& a = mc.asymptotes;
  return {
      within_abs("pbar(50) vs limit", mc.pbar.back(), a.pbar, 1e-6),
      within_abs("qbar(50) vs limit", mc.qbar.back(), a.qbar, 1e-6),
      within_abs("rbar(50) vs limit", mc.rbar.back(), a.rbar, 1e-6),
      within_abs("ubar(50) vs limit", mc.ubar.back(), a.ubar, 1e-6),
      within_abs("vbar(50) vs limit", mc.vbar.back(), a.vbar, 1e-6),
  };
}

std::vector<CheckResult> check_diffusion_limit(const ModelParams& p, const VerifyOptions& opts) {
  const double sigma2 = derived_constants(p).sigma2;
  const double sigma = std::sqrt(sigma2);
  const std::size_t n = scaled_count(10000, opts);
  std::vector<CheckResult> out;
  std::vector<double> ks;
  std::string ks_text;
  for (long m : {10L, 50L, 200L}) {
    auto xs = scaled_counts(p, m, 1.0, n, stream_seed(opts.seed, kDiffusion));
    if (m == 200) out.push_back(within_rel("Var N^(200)_1 vs sigma^2", summarize(xs).variance(), sigma2, 0.10));
    for (double& x : xs) x /= sigma;
    ks.push_back(ks_distance_normal(xs));
    ks_text += fmt("%sm=%ld: %.4f", ks_text.empty() ? "" : ", ", m, ks.back());
  }
  const bool decreasing = ks[0] > ks[1] && ks[1] > ks[2];
  out.push_back(make("KS distance to N(0,1) decreasing in m", decreasing, ks_text));
  return out;
}

std::vector<CheckResult> check_stationary_version(const ModelParams& p, const VerifyOptions& opts) {
  const std::vector<double> grid{1.0, 5.0, 10.0};
  const std::size_t n = scaled_count(20000, opts);
  const auto samples = parallel_map(n, [&](std::size_t i) {
    return sample_stationary_on_grid(p, grid, 20.0, stream_seed(opts.seed, kStationary, i));
  });
  const StationaryStats st(p);
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    RunningStats s;
    for (const auto& g : samples) s.push(static_cast<double>(g.n[j]));
    out.push_back(within_se(fmt("stationary E N_t at t=%g", grid[j]), s, st.mean(grid[j])));
  }
  out.push_back(within_rel("stationary var(200)/200 vs sigma^2", st.var(200.0) / 200.0, derived_constants(p).sigma2, 0.01));
  return out;
}

std::vector<CheckResult> check_price_models(const ModelParams& p, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const double m = 200.0;
  const double at_m[] = {m};
  const std::size_t n = scaled_count(10000, opts);
  const auto mid = parallel_map(n, [&](std::size_t i) {
    return simulate_price(p, p, PriceKind::Midprice, 1.0, m, at_m, stream_seed(opts.seed, kPrice, i)).values[0] /
           std::sqrt(m);
  });
  out.push_back(within_rel("Var S_200/sqrt(200) vs beta", summarize(mid).variance(), derived_constants(p).beta(1.0), 0.10));

  const double horizon = 5.0;
  const double alpha = 0.05;
  const GeometricSpec spec{1.0, 0.1};
  const double at_h[] = {horizon};
  const auto disc = parallel_map(n, [&](std::size_t i) {
    const PricePath path = simulate_price(p, p, PriceKind::Geometric, alpha, horizon, at_h,
                                          stream_seed(opts.seed, kGeometric, i), spec);
    return std::exp(-alpha * horizon) * path.values[0];
  });
  out.push_back(within_se("geometric discounted price mean vs S0", summarize(disc), spec.s0));
  return out;
}

std::vector<CheckResult> check_estimation(const ModelParams& p, const VerifyOptions& opts) {
  const DerivedConstants dc = derived_constants(p);
  const EventLog log = simulate_path(p, 5e4, stream_seed(opts.seed, kEstimate));
  const Estimates e = estimate_params(log, default_bin_width(p));
  return {
      within_abs("executed / (executed + cancelled)", e.exec_ratio, dc.exec_fraction, 0.01),
      within_abs("time-average depth vs E Gamma_inf", e.mean_depth, dc.g_inf, 0.02),
      within_abs(fmt("nu_hat (bin width %g)", e.bin_width), e.nu_hat, dc.nu, 0.05),
  };
}

ModelParams random_params(Rng& rng) {
  ModelParams p;
  p.lambda0 = 0.2 + 3.0 * rng.uniform();
  p.b = 0.2 + 3.0 * rng.uniform();
  p.c = 0.1 + 2.0 * rng.uniform();
  p.d = rng.bernoulli(0.15) ? 0.0 : 0.1 + 2.0 * rng.uniform();
  const double a_max = 0.9 * p.b * (p.c + p.d) / p.c;
  p.a = rng.bernoulli(0.15) ? 0.0 : a_max * rng.uniform();
  return p;
}

namespace {

std::string property_failure(const ModelParams& p, std::uint64_t seed, double horizon) {
  const EventLog a = simulate_path(p, horizon, seed);
  const EventLog b = simulate_path(p, horizon, seed);
  if (a.events != b.events) return "same seed gave different logs";
  long prev_gamma = 0;
  long prev_n = 0, prev_l = 0, prev_k = 0;
  for (const Event& e : a.events) {
    const SimState& s = e.state;
    if (s.gamma != s.l - s.n - s.k_cancelled) return "book balance broken";
    if (s.n < prev_n || s.l < prev_l || s.k_cancelled < prev_k) return "counter decreased";
    if (!(s.lambda >= p.lambda0)) return "Lambda below lambda0";
    if (e.kind != EventKind::LimitArrival && prev_gamma == 0) return "removal from empty book";
    prev_gamma = s.gamma;
    prev_n = s.n;
    prev_l = s.l;
    prev_k = s.k_cancelled;
  }
  for (double t = 0.0; t <= horizon; t += horizon / 37.0)
    if (!(a.state_at(t).lambda >= p.lambda0)) return "Lambda below lambda0 between events";
  return {};
}

ExperimentConfig random_config(Rng& rng) {
  ExperimentConfig cfg;
  cfg.params = random_params(rng);
  if (rng.bernoulli(0.5)) cfg.minus_params = random_params(rng);
  cfg.seed = rng.next_u64();
  cfg.horizon = 1.0 + 1000.0 * rng.uniform();
  cfg.stationary = rng.bernoulli(0.5);
  cfg.burn_in = rng.bernoulli(0.3) ? -1.0 : 50.0 * rng.uniform();
  cfg.lookback = 100.0 * rng.uniform();
  cfg.t_max = 0.5 + 100.0 * rng.uniform();
  cfg.grid_points = 1 + static_cast<std::size_t>(rng.next_u64() % 5000);
  cfg.n_paths = 100 + static_cast<std::size_t>(rng.next_u64() % 100000);
  cfg.scales.clear();
  for (long k = 0, len = 1 + static_cast<long>(rng.next_u64() % 4); k < len; ++k)
    cfg.scales.push_back(1 + static_cast<long>(rng.next_u64() % 1000));
  cfg.t_grid.clear();
  double t = 0.0;
  for (long k = 0, len = 1 + static_cast<long>(rng.next_u64() % 4); k < len; ++k) cfg.t_grid.push_back(t += 0.1 + rng.uniform());
  const char* kinds[] = {"midprice", "inverse-depth", "geometric"};
  cfg.price_kind = kinds[rng.next_u64() % 3];
  cfg.alpha = rng.uniform() * 2.0;
  cfg.s0 = 0.1 + rng.uniform() * 100.0;
  cfg.sigma = -0.5 + rng.uniform();
  cfg.bin_width = rng.bernoulli(0.3) ? -1.0 : 1.0 + 100.0 * rng.uniform();
  cfg.out_dir = rng.bernoulli(0.5) ? "" : "out dir/" + std::to_string(rng.next_u64() % 1000);
  cfg.output = rng.bernoulli(0.5) ? "" : "f\"ile\\" + std::to_string(rng.next_u64() % 1000) + ".csv";
  return cfg;
}

} // namespace

std::vector<CheckResult> check_properties(std::size_t cases, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(stream_seed(opts.seed, kProps));

  std::string sim_fail;
  for (std::size_t i = 0; i < cases && sim_fail.empty(); ++i) {
    const ModelParams p = random_params(rng);
    const std::uint64_t seed = rng.next_u64();
    const double horizon = 1.0 + 30.0 * rng.uniform();
    const std::string why = property_failure(p, seed, horizon);
    if (!why.empty())
      sim_fail = fmt("case %zu (lambda0=%g a=%g b=%g c=%g d=%g seed=%llu): %s", i, p.lambda0, p.a, p.b, p.c, p.d,
                     static_cast<unsigned long long>(seed), why.c_str());
  }
  out.push_back(make("determinism, book balance, Lambda >= lambda0, no removal from empty book", sim_fail.empty(),
                     sim_fail.empty() ? fmt("%zu random cases", cases) : sim_fail));

  double worst = 0.0;
  double worst_x = 0.0;
  for (std::size_t i = 0; i < cases; ++i) {
    double x;
    switch (i % 3) {
    case 0: x = -std::exp(-1.0) + rng.uniform() * (std::exp(-1.0) + 1.0); break;
    case 1: x = std::pow(10.0, -12.0 + 15.0 * rng.uniform()); break;
    default: x = -std::exp(-1.0) * rng.uniform(); break;
    }
    if (i == 0) x = -std::exp(-1.0);
    const double w = lambert_w0(x);
    const double err = std::abs(w * std::exp(w) - x) / std::max(std::abs(x), 1e-300);
    const double bad = w >= -1.0 ? err : INFINITY;
    if (!(bad <= worst)) {
      worst = bad;
      worst_x = x;
    }
  }
  out.push_back(make("Lambert-W round trip w e^w = x", worst <= 1e-12,
                     fmt("%zu random x, worst rel err %.3g at x = %.6g", cases, worst, worst_x)));

  std::string cfg_fail;
  for (std::size_t i = 0; i < cases && cfg_fail.empty(); ++i) {
    const ExperimentConfig cfg = random_config(rng);
    const ExperimentConfig back = config_from_json(nlohmann::json::parse(to_json(cfg).dump()));
    if (!(back == cfg)) cfg_fail = fmt("case %zu differs after round trip: %s", i, to_json(cfg).dump().c_str());
  }
  out.push_back(make("config JSON round trip", cfg_fail.empty(),
                     cfg_fail.empty() ? fmt("%zu random configs", cases) : cfg_fail));
  return out;
}

std::vector<CheckResult> run_oracle_suite(const ModelParams& p, const VerifyOptions& opts,
                                          const std::function<void(const CheckResult&)>& on_result) {
  using Fn = std::vector<CheckResult> (*)(const ModelParams&, const VerifyOptions&);
  const Fn checks[] = {check_first_moments,    check_variance_growth,  check_dual_simulators, check_borel_law,
                       check_cumulants,        check_second_moment_limits, check_diffusion_limit,
                       check_stationary_version, check_price_models, check_estimation};
  std::vector<CheckResult> all;
  auto add = [&](std::vector<CheckResult> batch, double seconds) {
    for (auto& r : batch) {
      r.seconds = seconds;
      if (on_result) on_result(r);
      all.push_back(std::move(r));
    }
  };
  for (Fn fn : checks) {
    const auto start = std::chrono::steady_clock::now();
    auto batch = fn(p, opts);
    add(std::move(batch), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  const auto start = std::chrono::steady_clock::now();
  auto batch = check_properties(scaled_count(1000, opts), opts);
  add(std::move(batch), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return all;
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) os << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << '\n';
}

} // namespace bhawkes
