#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "hdc/error.hpp"

namespace hdc {

// The eleven compared architectures.
enum class VsaKind : std::uint8_t {
  MapC,     // real [-1,1], elementwise multiply binding
  MapB,     // bipolar {-1,1}
  MapI,     // integer (bipolar atoms, unnormalized bundling)
  Hrr,      // real N(0,1/D), circular convolution
  Fhrr,     // complex unit circle stored as angles
  Vtb,      // real N(0,1/D), vector-derived transformation binding
  Mbat,     // real N(0,1/D), orthonormal matrix binding
  Bsc,      // dense binary, XOR
  BsdcCdt,  // sparse binary, CDT binding (binding itself out of scope)
  BsdcS,    // sparse binary, whole-vector shift binding
  BsdcSeg,  // sparse binary, segment-wise shift binding
};

inline constexpr std::array<VsaKind, 11> kAllKinds = {
    VsaKind::MapC, VsaKind::MapB, VsaKind::MapI, VsaKind::Hrr,
    VsaKind::Fhrr, VsaKind::Vtb,  VsaKind::Mbat, VsaKind::Bsc,
    VsaKind::BsdcCdt, VsaKind::BsdcS, VsaKind::BsdcSeg};

inline constexpr std::string_view kind_name(VsaKind kind) {
  switch (kind) {
    case VsaKind::MapC: return "MAP-C";
    case VsaKind::MapB: return "MAP-B";
    case VsaKind::MapI: return "MAP-I";
    case VsaKind::Hrr: return "HRR";
    case VsaKind::Fhrr: return "FHRR";
    case VsaKind::Vtb: return "VTB";
    case VsaKind::Mbat: return "MBAT";
    case VsaKind::Bsc: return "BSC";
    case VsaKind::BsdcCdt: return "BSDC-CDT";
    case VsaKind::BsdcS: return "BSDC-S";
    case VsaKind::BsdcSeg: return "BSDC-SEG";
  }
  return "?";
}

inline std::string all_kind_names() {
  std::string out;
  for (VsaKind k : kAllKinds) {
    if (!out.empty()) out += ", ";
    out += kind_name(k);
  }
  return out;
}

inline VsaKind parse_kind(std::string_view name) {
  for (VsaKind k : kAllKinds) {
    if (name == kind_name(k)) return k;
  }
  throw ConfigError("unknown VSA kind '" + std::string(name) +
                    "'; valid kinds: " + all_kind_names());
}

inline constexpr bool is_sparse_binary(VsaKind k) {
  return k == VsaKind::BsdcCdt || k == VsaKind::BsdcS || k == VsaKind::BsdcSeg;
}

inline constexpr bool is_dense_real(VsaKind k) {
  return k == VsaKind::MapC || k == VsaKind::Hrr || k == VsaKind::Vtb ||
         k == VsaKind::Mbat;
}

// Kinds whose binding is its own inverse (taxonomy: self-inverse branch).
inline constexpr bool is_self_inverse(VsaKind k) {
  return k == VsaKind::MapC || k == VsaKind::MapB || k == VsaKind::MapI ||
         k == VsaKind::Bsc;
}

}  // namespace hdc
