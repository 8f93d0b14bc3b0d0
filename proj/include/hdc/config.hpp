#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "hdc/error.hpp"
#include "hdc/kind.hpp"

namespace hdc {

namespace detail {

inline bool is_perfect_square(std::uint32_t n) {
  const auto r = static_cast<std::uint32_t>(std::lround(std::sqrt(double(n))));
  return r * r == n;
}

// Divisor of dim closest to target (ties -> smaller divisor).
inline std::uint32_t nearest_divisor(std::uint32_t dim, double target) {
  std::uint32_t best = 1;
  double best_err = std::abs(target - 1.0);
  for (std::uint32_t d = 1; d <= dim; ++d) {
    if (dim % d != 0) continue;
    const double err = std::abs(target - double(d));
    if (err < best_err) {
      best = d;
      best_err = err;
    }
  }
  return best;
}

}  // namespace detail

// Architecture kind, dimensionality, sparsity layout and seed: the single
// source of truth every operation dispatches on.
struct VsaConfig {
  VsaKind kind = VsaKind::MapC;
  std::uint32_t dim = 0;
  double density = 0.0;        // sparse kinds only; 0 = default 1/sqrt(dim)
  std::uint32_t segments = 0;  // BSDC-SEG only; 0 = derived from density
  std::uint64_t seed = 1;
  std::optional<double> max_density;  // thinning threshold for bundling

  static VsaConfig make(VsaKind kind, std::uint32_t dim,
                        std::uint64_t seed = 1) {
    VsaConfig cfg;
    cfg.kind = kind;
    cfg.dim = dim;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }

  double effective_density() const {
    if (!is_sparse_binary(kind)) return 0.5;
    if (kind == VsaKind::BsdcSeg) {
      return double(effective_segments()) / double(dim);
    }
    return density > 0.0 ? density : 1.0 / std::sqrt(double(dim));
  }

  std::uint32_t effective_segments() const {
    if (segments > 0) return segments;
    const double p = density > 0.0 ? density : 1.0 / std::sqrt(double(dim));
    return detail::nearest_divisor(dim, p * double(dim));
  }

  std::uint32_t segment_length() const { return dim / effective_segments(); }

  void validate() const {
    if (dim == 0) throw ConfigError("dim must be positive");
    if (kind == VsaKind::Vtb && !detail::is_perfect_square(dim)) {
      throw ConfigError("VTB requires a perfect-square dim; got " +
                        std::to_string(dim));
    }
    if (density < 0.0 || density > 1.0) {
      throw ConfigError("density must lie in (0,1]");
    }
    if (is_sparse_binary(kind) && density > 0.0 && density * dim < 1.0) {
      throw ConfigError("density too low: expected at least one on-bit");
    }
    if (kind == VsaKind::BsdcSeg) {
      const std::uint32_t s = effective_segments();
      if (s == 0 || dim % s != 0) {
        throw ConfigError("BSDC-SEG requires segments to divide dim exactly");
      }
    }
    if (max_density && (*max_density <= 0.0 || *max_density > 1.0)) {
      throw ConfigError("max_density must lie in (0,1]");
    }
  }
};

}  // namespace hdc
