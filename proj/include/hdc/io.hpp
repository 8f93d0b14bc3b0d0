#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"

// Binary serialization. A single hypervector is stored as
//   "HVEC" | u8 payload tag | u32 dim | payload
// with bit-packed words for dense binary, little-endian 64-bit floats for
// real/angle payloads, and a u32 index list for sparse payloads. Container
// files (item memories, models) embed the same vector records.

namespace hdc::io {

namespace detail {

template <class T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw DataError("unexpected end of file");
  return value;
}

inline void put_string(std::ostream& os, const std::string& s) {
  put<std::uint32_t>(os, std::uint32_t(s.size()));
  os.write(s.data(), std::streamsize(s.size()));
}

inline std::string get_string(std::istream& is) {
  const auto n = get<std::uint32_t>(is);
  std::string s(n, '\0');
  is.read(s.data(), std::streamsize(n));
  if (!is) throw DataError("unexpected end of file");
  return s;
}

enum class PayloadTag : std::uint8_t {
  DenseReal = 0,
  Bipolar = 1,
  Integer = 2,
  DenseBinary = 3,
  SparseBinary = 4,
  Angle = 5,
};

}  // namespace detail

inline void write_vector(std::ostream& os, const Hypervector& hv) {
  using detail::put;
  using detail::PayloadTag;
  os.write("HVEC", 4);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DenseReal>) {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::DenseReal));
          put<std::uint32_t>(os, std::uint32_t(p.v.size()));
          for (double x : p.v) put<double>(os, x);
        } else if constexpr (std::is_same_v<T, Bipolar>) {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::Bipolar));
          put<std::uint32_t>(os, std::uint32_t(p.v.size()));
          for (std::int8_t x : p.v) put<std::int8_t>(os, x);
        } else if constexpr (std::is_same_v<T, IntegerVec>) {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::Integer));
          put<std::uint32_t>(os, std::uint32_t(p.v.size()));
          for (std::int64_t x : p.v) put<std::int64_t>(os, x);
        } else if constexpr (std::is_same_v<T, DenseBinary>) {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::DenseBinary));
          put<std::uint32_t>(os, p.dim);
          for (std::uint64_t w : p.words) put<std::uint64_t>(os, w);
        } else if constexpr (std::is_same_v<T, SparseBinary>) {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::SparseBinary));
          put<std::uint32_t>(os, p.dim);
          put<std::uint32_t>(os, std::uint32_t(p.on.size()));
          for (std::uint32_t i : p.on) put<std::uint32_t>(os, i);
        } else {
          put<std::uint8_t>(os, std::uint8_t(PayloadTag::Angle));
          put<std::uint32_t>(os, std::uint32_t(p.v.size()));
          for (double x : p.v) put<double>(os, x);
        }
      },
      hv.payload());
}

inline Hypervector read_vector(std::istream& is) {
  using detail::get;
  using detail::PayloadTag;
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "HVEC", 4) != 0) {
    throw DataError("bad magic: expected HVEC record");
  }
  const auto tag = PayloadTag(get<std::uint8_t>(is));
  const auto dim = get<std::uint32_t>(is);
  switch (tag) {
    case PayloadTag::DenseReal: {
      DenseReal p;
      p.v.resize(dim);
      for (auto& x : p.v) x = get<double>(is);
      return Hypervector(std::move(p));
    }
    case PayloadTag::Bipolar: {
      Bipolar p;
      p.v.resize(dim);
      for (auto& x : p.v) x = get<std::int8_t>(is);
      return Hypervector(std::move(p));
    }
    case PayloadTag::Integer: {
      IntegerVec p;
      p.v.resize(dim);
      for (auto& x : p.v) x = get<std::int64_t>(is);
      return Hypervector(std::move(p));
    }
    case PayloadTag::DenseBinary: {
      auto p = DenseBinary::zeros(dim);
      for (auto& w : p.words) w = get<std::uint64_t>(is);
      p.mask_tail();
      return Hypervector(std::move(p));
    }
    case PayloadTag::SparseBinary: {
      SparseBinary p;
      p.dim = dim;
      const auto n = get<std::uint32_t>(is);
      p.on.resize(n);
      for (auto& i : p.on) i = get<std::uint32_t>(is);
      return Hypervector(std::move(p));
    }
    case PayloadTag::Angle: {
      AngleVec p;
      p.v.resize(dim);
      for (auto& x : p.v) x = get<double>(is);
      return Hypervector(std::move(p));
    }
  }
  throw DataError("unknown payload tag");
}

inline void save_vector(const std::string& path, const Hypervector& hv) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open " + path + " for writing");
  write_vector(os, hv);
}

inline Hypervector load_vector(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path);
  return read_vector(is);
}

}  // namespace hdc::io
