#pragma once

#include <algorithm>
#include <cmath>

#include "hdc/config.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// Draws one atomic hypervector per the initialization column of Table 1.
inline Hypervector random_vector(const VsaConfig& cfg, SeededRng& rng) {
  cfg.validate();
  const std::uint32_t d = cfg.dim;
  switch (cfg.kind) {
    case VsaKind::MapC: {
      DenseReal p;
      p.v.resize(d);
      for (auto& x : p.v) x = rng.uniform(-1.0, 1.0);
      return Hypervector(std::move(p));
    }
    case VsaKind::MapB: {
      Bipolar p;
      p.v.resize(d);
      for (auto& x : p.v) x = rng.bernoulli(0.5) ? 1 : -1;
      return Hypervector(std::move(p));
    }
    case VsaKind::MapI: {
      IntegerVec p;
      p.v.resize(d);
      for (auto& x : p.v) x = rng.bernoulli(0.5) ? 1 : -1;
      return Hypervector(std::move(p));
    }
    case VsaKind::Hrr:
    case VsaKind::Vtb:
    case VsaKind::Mbat: {
      DenseReal p;
      p.v.resize(d);
      const double sigma = 1.0 / std::sqrt(double(d));
      for (auto& x : p.v) x = rng.normal(0.0, sigma);
      return Hypervector(std::move(p));
    }
    case VsaKind::Bsc: {
      auto p = DenseBinary::zeros(d);
      for (std::uint32_t i = 0; i < d; ++i) p.set(i, rng.bernoulli(0.5));
      return Hypervector(std::move(p));
    }
    case VsaKind::BsdcCdt:
    case VsaKind::BsdcS: {
      // Exactly ceil(p*D) on-bits at uniformly random positions. Like the
      // one-bit-per-segment rule of BSDC-SEG this fixes the popcount of
      // every atomic vector; Bernoulli-per-bit draws leave a binomial
      // popcount spread that visibly degrades sparse retrieval.
      SparseBinary p;
      p.dim = d;
      const auto bits = std::uint32_t(
          std::ceil(cfg.effective_density() * double(d)));
      p.on = rng.sample(d, std::min(bits, d));
      std::sort(p.on.begin(), p.on.end());
      return Hypervector(std::move(p));
    }
    case VsaKind::BsdcSeg: {
      SparseBinary p;
      p.dim = d;
      const std::uint32_t s = cfg.effective_segments();
      const std::uint32_t len = cfg.segment_length();
      p.on.reserve(s);
      for (std::uint32_t j = 0; j < s; ++j) {
        p.on.push_back(j * len + std::uint32_t(rng.below(len)));
      }
      return Hypervector(std::move(p));
    }
    case VsaKind::Fhrr: {
      AngleVec p;
      p.v.resize(d);
      for (auto& x : p.v) x = rng.uniform_angle();
      return Hypervector(std::move(p));
    }
  }
  throw ConfigError("unhandled kind");
}

// Binding identity where a closed form exists; bind(identity, x) == x.
inline Hypervector identity_vector(VsaKind kind, std::uint32_t dim) {
  switch (kind) {
    case VsaKind::MapC: {
      DenseReal p;
      p.v.assign(dim, 1.0);
      return Hypervector(std::move(p));
    }
    case VsaKind::MapB: {
      Bipolar p;
      p.v.assign(dim, 1);
      return Hypervector(std::move(p));
    }
    case VsaKind::MapI: {
      IntegerVec p;
      p.v.assign(dim, 1);
      return Hypervector(std::move(p));
    }
    case VsaKind::Bsc:
      return Hypervector(DenseBinary::zeros(dim));
    case VsaKind::Hrr: {
      DenseReal p;
      p.v.assign(dim, 0.0);
      p.v[0] = 1.0;  // convolution unit impulse
      return Hypervector(std::move(p));
    }
    case VsaKind::Fhrr: {
      AngleVec p;
      p.v.assign(dim, 0.0);
      return Hypervector(std::move(p));
    }
    case VsaKind::BsdcS: {
      // Single on-bit at index 0 hashes to 0, so the shift is the identity.
      SparseBinary p;
      p.dim = dim;
      p.on = {0};
      return Hypervector(std::move(p));
    }
    case VsaKind::Vtb:
    case VsaKind::Mbat:
    case VsaKind::BsdcSeg:
    case VsaKind::BsdcCdt:
      throw UnsupportedOperationError(
          std::string(kind_name(kind)) +
          " has no closed-form binding identity");
  }
  throw ConfigError("unhandled kind");
}

}  // namespace hdc
