#include "bhawkes/price.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "bhawkes/errors.hpp"
#include "bhawkes/exact_sim.hpp"
#include "bhawkes/rng.hpp"

namespace bhawkes {

std::string_view to_string(PriceKind kind) {
  switch (kind) {
  case PriceKind::Midprice:
    return "MIDPRICE";
  case PriceKind::InverseDepth:
    return "INVERSE_DEPTH";
  case PriceKind::Geometric:
    return "GEOMETRIC";
  }
  return "UNKNOWN";
}

PriceKind parse_price_kind(std::string_view text) {
  std::string key;
  for (char ch : text) key.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  for (auto k : {PriceKind::Midprice, PriceKind::InverseDepth, PriceKind::Geometric})
    if (to_string(k) == key) return k;
  throw UnsupportedKind("unsupported price model '" + std::string(text) + "'");
}

PricePath simulate_price(const ModelParams& params_plus, const ModelParams& params_minus, PriceKind kind,
                         double alpha, double horizon, std::span<const double> grid, std::uint64_t seed,
                         const GeometricSpec& geometric, bool same_streams) {
  if (!(horizon >= 0.0)) throw HorizonNonPositive("horizon must be nonnegative");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= horizon) || (i > 0 && grid[i] < grid[i - 1]))
      throw GridOutOfRange("price grid must be nondecreasing within [0, horizon]");
  }
  if (kind != PriceKind::Midprice && kind != PriceKind::InverseDepth && kind != PriceKind::Geometric)
    throw UnsupportedKind("unsupported price model");
  if (kind != PriceKind::Geometric && !(alpha > 0.0)) throw ValidationError("tick size alpha must be positive");

  PricePath path;
  path.kind = kind;
  path.alpha = alpha;
  path.geometric = geometric;
  path.grid.assign(grid.begin(), grid.end());
  path.values.resize(grid.size());
  if (grid.empty()) return path;

  const std::uint64_t plus_seed = stream_seed(seed, 0);
  const std::uint64_t minus_seed = same_streams ? plus_seed : stream_seed(seed, 1);
  const GridSample up = sample_on_grid(params_plus, grid, plus_seed);

  if (kind == PriceKind::Geometric) {
    if (!(geometric.sigma > -1.0)) throw ValidationError("geometric sigma must exceed -1");
    const double log_jump = std::log1p(geometric.sigma);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double exponent = static_cast<double>(up.n[j]) * log_jump + alpha * grid[j] -
                              geometric.sigma * params_plus.c * up.gamma_integral[j];
      path.values[j] = geometric.s0 * std::exp(exponent);
    }
    return path;
  }

  const GridSample down = sample_on_grid(params_minus, grid, minus_seed);
  const double half_tick = 0.5 * alpha;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (kind == PriceKind::Midprice) {
      path.values[j] = static_cast<double>(up.n[j] - down.n[j]) * half_tick;
    } else {
      path.values[j] = (up.inverse_depth[j] - down.inverse_depth[j]) * half_tick;
    }
  }
  return path;
}

} // namespace bhawkes
