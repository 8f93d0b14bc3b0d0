#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "hdc/error.hpp"

namespace hdc {

// Deterministic pseudo-random stream keyed by (seed, stream-id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard, and every distribution below is implemented here rather than
// taken from <random>, so identical (seed, stream) produces bit-identical
// draws on every platform and standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : SeededRng(seed, {}) {}

  SeededRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::vector<std::uint32_t> key;
    key.reserve(2 + 2 * stream.size());
    key.push_back(static_cast<std::uint32_t>(seed));
    key.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (std::uint64_t s : stream) {
      key.push_back(static_cast<std::uint32_t>(s));
      key.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(key.begin(), key.end());
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Angle uniform in (-pi, pi]: pi - U[0, 2*pi).
  double uniform_angle() {
    return M_PI - uniform() * 2.0 * M_PI;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the spare draw is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Uniform integer in [0, n). Unbiased via 128-bit multiply rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("SeededRng::below: n must be positive");
    while (true) {
      const std::uint64_t x = engine_();
      const unsigned __int128 m =
          static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(n);
      const std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= static_cast<std::uint64_t>(-n) % n) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  // k distinct values from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw ArgumentError("SeededRng::sample: k exceeds n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t j =
          i + static_cast<std::uint32_t>(below(n - i));
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Mixes experiment coordinates into one stream id (splitmix64 over parts).
inline std::uint64_t mix_stream(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t p : parts) {
    std::uint64_t z = (h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

}  // namespace hdc
