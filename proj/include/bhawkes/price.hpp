#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bhawkes/params.hpp"

namespace bhawkes {

enum class PriceKind { Midprice, InverseDepth, Geometric };

std::string_view to_string(PriceKind kind);
/// Accepts "midprice", "inverse-depth", "geometric" (case-insensitive,
/// '_' and '-' interchangeable). Throws UnsupportedKind.
PriceKind parse_price_kind(std::string_view text);

/// Extra inputs of the geometric model S0 (1+sigma)^N_t exp(alpha t - sigma c int Gamma).
struct GeometricSpec {
  double s0 = 1.0;
  double sigma = 0.1; // > -1
};

struct PricePath {
  PriceKind kind = PriceKind::Midprice;
  double alpha = 1.0; // tick size, or drift for GEOMETRIC
  GeometricSpec geometric;
  std::vector<double> grid;
  std::vector<double> values;
};

/// Price on `grid` (within [0, horizon]) built from independent exact-sim
/// paths of the buy side (params_plus, stream 0 of `seed`) and sell side
/// (params_minus, stream 1). GEOMETRIC uses the buy side only.
/// `same_streams` feeds both sides the same stream, a symmetry diagnostic.
PricePath simulate_price(const ModelParams& params_plus, const ModelParams& params_minus, PriceKind kind,
                         double alpha, double horizon, std::span<const double> grid, std::uint64_t seed,
                         const GeometricSpec& geometric = {}, bool same_streams = false);

} // namespace bhawkes
