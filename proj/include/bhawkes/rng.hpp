#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bhawkes {

/// Counter-style seed derivation: stream `index` of `master` is a fixed
/// hash of the pair, so path i can be regenerated without touching paths
/// 0..i-1 and independently of thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return stream_seed(stream_seed(master, a), b);
}

/// The per-path random stream. Variate transforms are written out here
/// rather than taken from <random> distributions so that the byte stream
/// of a path depends only on the engine.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Poisson by sequential inversion for small means, otherwise the
  /// standard library sampler on the same engine.
  long poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 30.0) {
      double u = uniform();
      double p = std::exp(-mean);
      double cdf = p;
      long k = 0;
      while (u >= cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        const double next = cdf + p;
        if (next == cdf) break;
        cdf = next;
      }
      return k;
    }
    std::poisson_distribution<long> dist(mean);
    return dist(engine_);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace bhawkes
