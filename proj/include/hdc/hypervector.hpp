#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "hdc/config.hpp"
#include "hdc/error.hpp"
#include "hdc/kind.hpp"

namespace hdc {

// Wraps any angle into the canonical half-open interval (-pi, pi].
inline double wrap_angle(double x) {
  double y = std::fmod(x + M_PI, 2.0 * M_PI);
  if (y <= 0.0) y += 2.0 * M_PI;
  return y - M_PI;
}

// ---------------------------------------------------------------------------
// Payload types, one per concrete vector space of Table 1.
// ---------------------------------------------------------------------------

struct DenseReal {
  std::vector<double> v;
  bool operator==(const DenseReal&) const = default;
};

struct Bipolar {
  std::vector<std::int8_t> v;  // values in {-1,+1}
  bool operator==(const Bipolar&) const = default;
};

struct IntegerVec {
  std::vector<std::int64_t> v;
  bool operator==(const IntegerVec&) const = default;
};

// Dense binary payload, bit-packed into 64-bit words.
struct DenseBinary {
  std::uint32_t dim = 0;
  std::vector<std::uint64_t> words;

  static DenseBinary zeros(std::uint32_t dim) {
    DenseBinary b;
    b.dim = dim;
    b.words.assign((dim + 63) / 64, 0);
    return b;
  }
  bool get(std::uint32_t i) const {
    return (words[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint32_t i, bool value) {
    const std::uint64_t mask = 1ULL << (i & 63);
    if (value)
      words[i >> 6] |= mask;
    else
      words[i >> 6] &= ~mask;
  }
  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words) c += std::uint64_t(__builtin_popcountll(w));
    return c;
  }
  // Clears storage bits past dim so word-wise ops stay canonical.
  void mask_tail() {
    const std::uint32_t extra = std::uint32_t(words.size()) * 64 - dim;
    if (extra > 0 && !words.empty()) words.back() &= ~0ULL >> extra;
  }
  bool operator==(const DenseBinary&) const = default;
};

// Sparse binary payload: strictly increasing on-bit indices < dim.
struct SparseBinary {
  std::uint32_t dim = 0;
  std::vector<std::uint32_t> on;
  bool operator==(const SparseBinary&) const = default;
};

struct AngleVec {
  std::vector<double> v;  // entries in (-pi, pi]
  bool operator==(const AngleVec&) const = default;
};

// ---------------------------------------------------------------------------
// Hypervector: tagged payload.
// ---------------------------------------------------------------------------

class Hypervector {
 public:
  using Payload = std::variant<DenseReal, Bipolar, IntegerVec, DenseBinary,
                               SparseBinary, AngleVec>;

  Hypervector() : payload_(DenseReal{}) {}
  explicit Hypervector(Payload p) : payload_(std::move(p)) {}

  std::uint32_t dim() const {
    return std::visit(
        [](const auto& p) -> std::uint32_t {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, DenseBinary> ||
                        std::is_same_v<T, SparseBinary>) {
            return p.dim;
          } else {
            return std::uint32_t(p.v.size());
          }
        },
        payload_);
  }

  const Payload& payload() const { return payload_; }
  Payload& payload() { return payload_; }

  template <class T>
  bool holds() const {
    return std::holds_alternative<T>(payload_);
  }

  template <class T>
  const T& as() const {
    if (auto* p = std::get_if<T>(&payload_)) return *p;
    throw TypeError("hypervector payload does not match the requested space");
  }

  template <class T>
  T& as() {
    if (auto* p = std::get_if<T>(&payload_)) return *p;
    throw TypeError("hypervector payload does not match the requested space");
  }

  bool operator==(const Hypervector&) const = default;

 private:
  Payload payload_;
};

// Expected payload index per kind, used to validate operands.
inline bool payload_matches(VsaKind kind, const Hypervector& hv) {
  switch (kind) {
    case VsaKind::MapC:
    case VsaKind::Hrr:
    case VsaKind::Vtb:
    case VsaKind::Mbat:
      return hv.holds<DenseReal>();
    case VsaKind::MapB:
      return hv.holds<Bipolar>();
    case VsaKind::MapI:
      return hv.holds<IntegerVec>();
    case VsaKind::Bsc:
      return hv.holds<DenseBinary>();
    case VsaKind::BsdcCdt:
    case VsaKind::BsdcS:
    case VsaKind::BsdcSeg:
      return hv.holds<SparseBinary>();
    case VsaKind::Fhrr:
      return hv.holds<AngleVec>();
  }
  return false;
}

inline void require_conforming(const VsaConfig& cfg, const Hypervector& hv,
                               const char* what = "operand") {
  if (!payload_matches(cfg.kind, hv)) {
    throw TypeError(std::string(what) + " payload does not match kind " +
                    std::string(kind_name(cfg.kind)));
  }
  if (hv.dim() != cfg.dim) {
    throw TypeError(std::string(what) + " dimension " +
                    std::to_string(hv.dim()) + " does not match config dim " +
                    std::to_string(cfg.dim));
  }
}

// On-bit fraction of a binary hypervector.
inline double density(const Hypervector& hv) {
  if (hv.holds<DenseBinary>()) {
    const auto& b = hv.as<DenseBinary>();
    return b.dim == 0 ? 0.0 : double(b.popcount()) / double(b.dim);
  }
  if (hv.holds<SparseBinary>()) {
    const auto& s = hv.as<SparseBinary>();
    return s.dim == 0 ? 0.0 : double(s.on.size()) / double(s.dim);
  }
  throw TypeError("density is defined for binary payloads only");
}

}  // namespace hdc
