#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "hdc/config.hpp"
#include "hdc/fft.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/mbat.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// Algebraic properties per the Table 1 marks and the binding taxonomy.
struct BindingTraits {
  bool commutative = false;
  bool associative = false;
  bool self_inverse = false;
  bool exact_inverse = false;
  bool quasi_orthogonal = false;
};

inline BindingTraits binding_traits(VsaKind kind) {
  switch (kind) {
    case VsaKind::MapC:
      return {true, true, true, false, true};
    case VsaKind::MapB:
    case VsaKind::MapI:
    case VsaKind::Bsc:
      return {true, true, true, true, true};
    case VsaKind::Hrr:
      return {true, true, false, false, true};
    case VsaKind::Vtb:
      return {false, false, false, false, true};
    case VsaKind::Mbat:
      return {false, false, false, true, true};
    case VsaKind::Fhrr:
      return {true, true, false, true, true};
    case VsaKind::BsdcS:
      return {false, false, false, true, true};
    case VsaKind::BsdcSeg:
      return {true, true, false, true, true};
    case VsaKind::BsdcCdt:
      return {true, true, false, false, false};
  }
  return {};
}

namespace detail {

inline void require_same_space(const Hypervector& a, const Hypervector& b) {
  if (a.payload().index() != b.payload().index()) {
    throw TypeError("operands live in different vector spaces");
  }
  if (a.dim() != b.dim()) {
    throw TypeError("operand dimensions differ: " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  }
}

inline std::uint32_t sqrt_dim(std::uint32_t dim) {
  const auto r = std::uint32_t(std::lround(std::sqrt(double(dim))));
  if (r * r != dim) {
    throw ConfigError("operation requires a perfect-square dim");
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bundling
// ---------------------------------------------------------------------------

// Uniformly down-samples on-bits until density <= max_density. No-op when
// already under the threshold; deterministic given the rng stream.
inline Hypervector thin(const Hypervector& hv, double max_density,
                        SeededRng& rng) {
  if (max_density <= 0.0 || max_density > 1.0) {
    throw ArgumentError("max_density must lie in (0,1]");
  }
  if (!hv.holds<SparseBinary>() && !hv.holds<DenseBinary>()) {
    throw TypeError("thin expects a binary payload");
  }
  std::vector<std::uint32_t> on;
  std::uint32_t dim;
  if (hv.holds<SparseBinary>()) {
    on = hv.as<SparseBinary>().on;
    dim = hv.as<SparseBinary>().dim;
  } else {
    const auto& b = hv.as<DenseBinary>();
    dim = b.dim;
    for (std::uint32_t i = 0; i < dim; ++i) {
      if (b.get(i)) on.push_back(i);
    }
  }
  const auto target =
      std::uint32_t(std::ceil(max_density * double(dim)));
  if (on.size() > target) {
    std::vector<std::uint32_t> keep_idx =
        rng.sample(std::uint32_t(on.size()), target);
    std::vector<std::uint32_t> kept(target);
    for (std::uint32_t i = 0; i < target; ++i) kept[i] = on[keep_idx[i]];
    std::sort(kept.begin(), kept.end());
    on = std::move(kept);
  }
  if (hv.holds<SparseBinary>()) {
    return Hypervector(SparseBinary{dim, std::move(on)});
  }
  auto b = DenseBinary::zeros(dim);
  for (std::uint32_t i : on) b.set(i, true);
  return Hypervector(std::move(b));
}

// Superposition per Table 1: sum with the kind's normalization. Thresholded
// kinds accumulate first and threshold once, with seeded tie-breaks.
inline Hypervector bundle(const VsaConfig& cfg,
                          std::span<const Hypervector> vectors,
                          SeededRng& rng) {
  if (vectors.empty()) throw ArgumentError("bundle: empty vector list");
  for (const auto& v : vectors) require_conforming(cfg, v);
  const std::uint32_t d = cfg.dim;
  const std::size_t k = vectors.size();
  switch (cfg.kind) {
    case VsaKind::MapC: {
      DenseReal out;
      out.v.assign(d, 0.0);
      for (const auto& v : vectors) {
        const auto& x = v.as<DenseReal>().v;
        for (std::uint32_t i = 0; i < d; ++i) out.v[i] += x[i];
      }
      for (auto& x : out.v) x = std::clamp(x, -1.0, 1.0);
      return Hypervector(std::move(out));
    }
    case VsaKind::MapI: {
      IntegerVec out;
      out.v.assign(d, 0);
      for (const auto& v : vectors) {
        const auto& x = v.as<IntegerVec>().v;
        for (std::uint32_t i = 0; i < d; ++i) out.v[i] += x[i];
      }
      return Hypervector(std::move(out));
    }
    case VsaKind::Hrr:
    case VsaKind::Vtb:
    case VsaKind::Mbat: {
      DenseReal out;
      out.v.assign(d, 0.0);
      for (const auto& v : vectors) {
        const auto& x = v.as<DenseReal>().v;
        for (std::uint32_t i = 0; i < d; ++i) out.v[i] += x[i];
      }
      double norm = 0.0;
      for (double x : out.v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (auto& x : out.v) x /= norm;
      }
      return Hypervector(std::move(out));
    }
    case VsaKind::MapB: {
      std::vector<std::int64_t> sum(d, 0);
      for (const auto& v : vectors) {
        const auto& x = v.as<Bipolar>().v;
        for (std::uint32_t i = 0; i < d; ++i) sum[i] += x[i];
      }
      Bipolar out;
      out.v.resize(d);
      for (std::uint32_t i = 0; i < d; ++i) {
        if (sum[i] > 0)
          out.v[i] = 1;
        else if (sum[i] < 0)
          out.v[i] = -1;
        else
          out.v[i] = rng.bernoulli(0.5) ? 1 : -1;
      }
      return Hypervector(std::move(out));
    }
    case VsaKind::Bsc: {
      std::vector<std::uint32_t> sum(d, 0);
      for (const auto& v : vectors) {
        const auto& x = v.as<DenseBinary>();
        for (std::uint32_t i = 0; i < d; ++i) sum[i] += x.get(i);
      }
      auto out = DenseBinary::zeros(d);
      const double half = double(k) / 2.0;  // threshold: half the count
      for (std::uint32_t i = 0; i < d; ++i) {
        if (double(sum[i]) > half)
          out.set(i, true);
        else if (double(sum[i]) == half)
          out.set(i, rng.bernoulli(0.5));
      }
      return Hypervector(std::move(out));
    }
    case VsaKind::BsdcCdt:
    case VsaKind::BsdcS:
    case VsaKind::BsdcSeg: {
      std::vector<std::uint8_t> bits(d, 0);
      for (const auto& v : vectors) {
        for (std::uint32_t i : v.as<SparseBinary>().on) bits[i] = 1;
      }
      SparseBinary out;
      out.dim = d;
      for (std::uint32_t i = 0; i < d; ++i) {
        if (bits[i]) out.on.push_back(i);
      }
      Hypervector hv(std::move(out));
      if (cfg.max_density) hv = thin(hv, *cfg.max_density, rng);
      return hv;
    }
    case VsaKind::Fhrr: {
      std::vector<double> re(d, 0.0), im(d, 0.0);
      for (const auto& v : vectors) {
        const auto& x = v.as<AngleVec>().v;
        for (std::uint32_t i = 0; i < d; ++i) {
          re[i] += std::cos(x[i]);
          im[i] += std::sin(x[i]);
        }
      }
      AngleVec out;
      out.v.resize(d);
      for (std::uint32_t i = 0; i < d; ++i) {
        // A vanishing resultant has no defined angle; draw one.
        if (std::abs(re[i]) < 1e-12 && std::abs(im[i]) < 1e-12) {
          out.v[i] = rng.uniform_angle();
        } else {
          out.v[i] = wrap_angle(std::atan2(im[i], re[i]));
        }
      }
      return Hypervector(std::move(out));
    }
  }
  throw ConfigError("unhandled kind");
}

// ---------------------------------------------------------------------------
// Binding operators
// ---------------------------------------------------------------------------

// MAP family: c_i = a_i * b_i.
inline Hypervector bind_elementwise(const Hypervector& a,
                                    const Hypervector& b) {
  detail::require_same_space(a, b);
  if (a.holds<DenseReal>()) {
    const auto& x = a.as<DenseReal>().v;
    const auto& y = b.as<DenseReal>().v;
    DenseReal out;
    out.v.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.v[i] = x[i] * y[i];
    return Hypervector(std::move(out));
  }
  if (a.holds<Bipolar>()) {
    const auto& x = a.as<Bipolar>().v;
    const auto& y = b.as<Bipolar>().v;
    Bipolar out;
    out.v.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      out.v[i] = std::int8_t(x[i] * y[i]);
    return Hypervector(std::move(out));
  }
  if (a.holds<IntegerVec>()) {
    const auto& x = a.as<IntegerVec>().v;
    const auto& y = b.as<IntegerVec>().v;
    IntegerVec out;
    out.v.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.v[i] = x[i] * y[i];
    return Hypervector(std::move(out));
  }
  throw TypeError("bind_elementwise expects a MAP payload");
}

// BSC: bit-wise XOR.
inline Hypervector bind_xor(const Hypervector& a, const Hypervector& b) {
  detail::require_same_space(a, b);
  const auto& x = a.as<DenseBinary>();
  const auto& y = b.as<DenseBinary>();
  DenseBinary out = x;
  for (std::size_t i = 0; i < out.words.size(); ++i) out.words[i] ^= y.words[i];
  return Hypervector(std::move(out));
}

// HRR binding: circular convolution, computed in the frequency domain.
inline Hypervector bind_circular_convolution(const Hypervector& a,
                                             const Hypervector& b) {
  detail::require_same_space(a, b);
  return Hypervector(
      DenseReal{fft::circular_convolve(a.as<DenseReal>().v,
                                       b.as<DenseReal>().v)});
}

// HRR unbinding: circular correlation, the approximate inverse.
inline Hypervector unbind_circular_correlation(const Hypervector& b,
                                               const Hypervector& c) {
  detail::require_same_space(b, c);
  return Hypervector(
      DenseReal{fft::circular_correlate(b.as<DenseReal>().v,
                                        c.as<DenseReal>().v)});
}

// VTB: c = V_b * a with V_b block-diagonal over the reshaped b. Writing
// A, B for the d' x d' row-major reshapes, the blocks collapse to
// reshape(c) = d^(1/4) * A * B^T, which is what the loops compute.
inline Hypervector bind_vtb(const Hypervector& a, const Hypervector& b) {
  detail::require_same_space(a, b);
  const auto& x = a.as<DenseReal>().v;
  const auto& y = b.as<DenseReal>().v;
  const std::uint32_t d = std::uint32_t(x.size());
  const std::uint32_t dp = detail::sqrt_dim(d);
  const double scale = std::pow(double(d), 0.25);
  DenseReal out;
  out.v.assign(d, 0.0);
  for (std::uint32_t i = 0; i < dp; ++i) {
    for (std::uint32_t u = 0; u < dp; ++u) {
      double acc = 0.0;
      for (std::uint32_t v = 0; v < dp; ++v) {
        acc += x[i * dp + v] * y[u * dp + v];
      }
      out.v[i * dp + u] = scale * acc;
    }
  }
  return Hypervector(std::move(out));
}

// VTB unbinding: a ~= V_b^T * c; block form reshape(a) = d^(1/4) * C * B.
inline Hypervector unbind_vtb(const Hypervector& b, const Hypervector& c) {
  detail::require_same_space(b, c);
  const auto& y = b.as<DenseReal>().v;
  const auto& z = c.as<DenseReal>().v;
  const std::uint32_t d = std::uint32_t(z.size());
  const std::uint32_t dp = detail::sqrt_dim(d);
  const double scale = std::pow(double(d), 0.25);
  DenseReal out;
  out.v.assign(d, 0.0);
  for (std::uint32_t i = 0; i < dp; ++i) {
    for (std::uint32_t v = 0; v < dp; ++v) {
      double acc = 0.0;
      for (std::uint32_t u = 0; u < dp; ++u) {
        acc += z[i * dp + u] * y[u * dp + v];
      }
      out.v[i * dp + v] = scale * acc;
    }
  }
  return Hypervector(std::move(out));
}

// Transposes the square reshape of a VTB vector. Since
// bind(a,b) = d^(1/4) vec(A B^T), this maps bind(a,b) onto bind(b,a); it is
// how the operand bound second is recovered when only the first is known.
inline Hypervector vtb_swap_operands(const Hypervector& c) {
  const auto& z = c.as<DenseReal>().v;
  const std::uint32_t d = std::uint32_t(z.size());
  const std::uint32_t dp = detail::sqrt_dim(d);
  DenseReal out;
  out.v.resize(d);
  for (std::uint32_t i = 0; i < dp; ++i) {
    for (std::uint32_t j = 0; j < dp; ++j) {
      out.v[j * dp + i] = z[i * dp + j];
    }
  }
  return Hypervector(std::move(out));
}

// Hash of an MBAT role vector: sum of the indices of elements greater than
// zero, mod D.
inline std::uint32_t mbat_role_hash(const Hypervector& role) {
  const auto& v = role.as<DenseReal>().v;
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0.0) h += i;
  }
  return std::uint32_t(h % v.size());
}

namespace detail {

// y[i] = x[(i - s) mod n] : cyclic shift forward by s.
inline std::vector<double> rotate(const std::vector<double>& x,
                                  std::uint32_t s) {
  const std::uint32_t n = std::uint32_t(x.size());
  std::vector<double> y(n);
  for (std::uint32_t i = 0; i < n; ++i) y[(i + s) % n] = x[i];
  return y;
}

}  // namespace detail

// MBAT: c = M_role * filler, where M_role is the cached orthonormal base
// matrix with rows and columns cyclically shifted by the role hash. The
// shifted product is evaluated as rot(M * rot^-1(filler)) without
// materializing M_role.
inline Hypervector bind_mbat(const VsaConfig& cfg, const Hypervector& role,
                             const Hypervector& filler) {
  detail::require_same_space(role, filler);
  const auto& m = MbatBasis::get(cfg.seed, cfg.dim);
  const std::uint32_t h = mbat_role_hash(role);
  const auto shifted =
      detail::rotate(filler.as<DenseReal>().v, cfg.dim - h % cfg.dim);
  std::vector<double> tmp(cfg.dim);
  matvec(m, shifted.data(), tmp.data());
  return Hypervector(DenseReal{detail::rotate(tmp, h)});
}

// MBAT unbinding: filler ~= M_role^T * c (exact up to rounding; M_role stays
// orthonormal under row/column shifts).
inline Hypervector unbind_mbat(const VsaConfig& cfg, const Hypervector& role,
                               const Hypervector& c) {
  detail::require_same_space(role, c);
  const auto& m = MbatBasis::get(cfg.seed, cfg.dim);
  const std::uint32_t h = mbat_role_hash(role);
  const auto shifted =
      detail::rotate(c.as<DenseReal>().v, cfg.dim - h % cfg.dim);
  std::vector<double> tmp(cfg.dim);
  matvec(m, shifted.data(), tmp.data(), /*transpose=*/true);
  return Hypervector(DenseReal{detail::rotate(tmp, h)});
}

// Hash of a sparse vector: sum of on-bit indices mod D.
inline std::uint32_t sparse_hash(const Hypervector& hv) {
  const auto& s = hv.as<SparseBinary>();
  std::uint64_t h = 0;
  for (std::uint32_t i : s.on) h += i;
  return std::uint32_t(h % s.dim);
}

namespace detail {

inline SparseBinary shift_sparse(const SparseBinary& x, std::uint32_t s) {
  SparseBinary out;
  out.dim = x.dim;
  out.on.resize(x.on.size());
  for (std::size_t i = 0; i < x.on.size(); ++i) {
    out.on[i] = (x.on[i] + s) % x.dim;
  }
  std::sort(out.on.begin(), out.on.end());
  return out;
}

}  // namespace detail

// BSDC-S: c = cyclic shift of b by hash(a).
inline Hypervector bind_shift(const Hypervector& a, const Hypervector& b) {
  detail::require_same_space(a, b);
  return Hypervector(
      detail::shift_sparse(b.as<SparseBinary>(), sparse_hash(a)));
}

// BSDC-S unbinding: shift back by hash(a); exact inverse.
inline Hypervector unbind_shift(const Hypervector& a, const Hypervector& c) {
  detail::require_same_space(a, c);
  const std::uint32_t d = c.dim();
  return Hypervector(detail::shift_sparse(c.as<SparseBinary>(),
                                          d - sparse_hash(a) % d));
}

namespace detail {

// Offset of the first on-bit inside each segment; 0 for empty segments.
inline std::vector<std::uint32_t> segment_offsets(const SparseBinary& x,
                                                  std::uint32_t segments,
                                                  std::uint32_t seg_len) {
  std::vector<std::uint32_t> offs(segments, 0);
  std::vector<bool> seen(segments, false);
  for (std::uint32_t i : x.on) {
    const std::uint32_t seg = i / seg_len;
    if (!seen[seg]) {
      seen[seg] = true;
      offs[seg] = i % seg_len;
    }
  }
  return offs;
}

inline SparseBinary segment_shift(const SparseBinary& x,
                                  const std::vector<std::uint32_t>& offs,
                                  std::uint32_t seg_len, bool invert) {
  SparseBinary out;
  out.dim = x.dim;
  out.on.resize(x.on.size());
  for (std::size_t i = 0; i < x.on.size(); ++i) {
    const std::uint32_t seg = x.on[i] / seg_len;
    const std::uint32_t off = x.on[i] % seg_len;
    const std::uint32_t delta =
        invert ? seg_len - offs[seg] % seg_len : offs[seg];
    out.on[i] = seg * seg_len + (off + delta) % seg_len;
  }
  std::sort(out.on.begin(), out.on.end());
  return out;
}

}  // namespace detail

// BSDC-SEG: shift each segment of b by the offset of a's first on-bit in the
// matching segment. Commutative on atomic vectors (offsets add mod n).
inline Hypervector bind_segment_shift(const VsaConfig& cfg,
                                      const Hypervector& a,
                                      const Hypervector& b) {
  detail::require_same_space(a, b);
  if (a.dim() != cfg.dim) {
    throw ConfigError("segment layout does not match operand dimension");
  }
  const std::uint32_t s = cfg.effective_segments();
  const std::uint32_t len = cfg.segment_length();
  const auto offs = detail::segment_offsets(a.as<SparseBinary>(), s, len);
  return Hypervector(
      detail::segment_shift(b.as<SparseBinary>(), offs, len, false));
}

// BSDC-SEG unbinding: shift by the negated offsets; exact inverse.
inline Hypervector unbind_segment_shift(const VsaConfig& cfg,
                                        const Hypervector& a,
                                        const Hypervector& c) {
  detail::require_same_space(a, c);
  if (a.dim() != cfg.dim) {
    throw ConfigError("segment layout does not match operand dimension");
  }
  const std::uint32_t s = cfg.effective_segments();
  const std::uint32_t len = cfg.segment_length();
  const auto offs = detail::segment_offsets(a.as<SparseBinary>(), s, len);
  return Hypervector(
      detail::segment_shift(c.as<SparseBinary>(), offs, len, true));
}

// FHRR binding: element-wise angle addition mod 2*pi.
inline Hypervector bind_fhrr(const Hypervector& a, const Hypervector& b) {
  detail::require_same_space(a, b);
  const auto& x = a.as<AngleVec>().v;
  const auto& y = b.as<AngleVec>().v;
  AngleVec out;
  out.v.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.v[i] = wrap_angle(x[i] + y[i]);
  }
  return Hypervector(std::move(out));
}

// FHRR unbinding: angle subtraction; exact inverse.
inline Hypervector unbind_fhrr(const Hypervector& a, const Hypervector& c) {
  detail::require_same_space(a, c);
  const auto& x = a.as<AngleVec>().v;
  const auto& z = c.as<AngleVec>().v;
  AngleVec out;
  out.v.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.v[i] = wrap_angle(z[i] - x[i]);
  }
  return Hypervector(std::move(out));
}

// ---------------------------------------------------------------------------
// Kind dispatchers
// ---------------------------------------------------------------------------

inline Hypervector bind(const VsaConfig& cfg, const Hypervector& a,
                        const Hypervector& b) {
  require_conforming(cfg, a, "left operand");
  require_conforming(cfg, b, "right operand");
  switch (cfg.kind) {
    case VsaKind::MapC:
    case VsaKind::MapB:
    case VsaKind::MapI:
      return bind_elementwise(a, b);
    case VsaKind::Bsc:
      return bind_xor(a, b);
    case VsaKind::Hrr:
      return bind_circular_convolution(a, b);
    case VsaKind::Vtb:
      return bind_vtb(a, b);
    case VsaKind::Mbat:
      return bind_mbat(cfg, a, b);
    case VsaKind::BsdcS:
      return bind_shift(a, b);
    case VsaKind::BsdcSeg:
      return bind_segment_shift(cfg, a, b);
    case VsaKind::Fhrr:
      return bind_fhrr(a, b);
    case VsaKind::BsdcCdt:
      throw UnsupportedOperationError(
          "BSDC-CDT binding (context dependent thinning) is not implemented; "
          "the experimental comparisons bind sparse vectors by shifting "
          "(BSDC-S) or segment shifting (BSDC-SEG) instead");
  }
  throw ConfigError("unhandled kind");
}

// Removes operand a from c = bind(x, a) (or bind(a, x) for commutative and
// self-inverse kinds), returning x. For VTB the key is the operand the
// transformation matrix was built from (the second bind operand); for MBAT
// and BSDC-S it is the role (the first).
inline Hypervector unbind(const VsaConfig& cfg, const Hypervector& a,
                          const Hypervector& c) {
  require_conforming(cfg, a, "key operand");
  require_conforming(cfg, c, "composite operand");
  switch (cfg.kind) {
    case VsaKind::MapC:
    case VsaKind::MapB:
    case VsaKind::MapI:
      return bind_elementwise(a, c);  // self-inverse
    case VsaKind::Bsc:
      return bind_xor(a, c);  // self-inverse
    case VsaKind::Hrr:
      return unbind_circular_correlation(a, c);
    case VsaKind::Vtb:
      return unbind_vtb(a, c);
    case VsaKind::Mbat:
      return unbind_mbat(cfg, a, c);
    case VsaKind::BsdcS:
      return unbind_shift(a, c);
    case VsaKind::BsdcSeg:
      return unbind_segment_shift(cfg, a, c);
    case VsaKind::Fhrr:
      return unbind_fhrr(a, c);
    case VsaKind::BsdcCdt:
      throw UnsupportedOperationError(
          "BSDC-CDT has no unbinding operator; retrieval goes through "
          "similarity search instead");
  }
  throw ConfigError("unhandled kind");
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

// Cyclic shift of all positions by `order` (mod D). rho^0 is the identity
// and rho^a o rho^b = rho^(a+b).
inline Hypervector permute(const Hypervector& hv, std::int64_t order) {
  const std::uint32_t d = hv.dim();
  if (d == 0) return hv;
  const std::uint32_t s = std::uint32_t(((order % d) + d) % d);
  if (s == 0) return hv;
  return std::visit(
      [&](const auto& p) -> Hypervector {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DenseBinary>) {
          auto out = DenseBinary::zeros(d);
          for (std::uint32_t i = 0; i < d; ++i) {
            if (p.get(i)) out.set((i + s) % d, true);
          }
          return Hypervector(std::move(out));
        } else if constexpr (std::is_same_v<T, SparseBinary>) {
          SparseBinary out;
          out.dim = d;
          out.on.resize(p.on.size());
          for (std::size_t i = 0; i < p.on.size(); ++i) {
            out.on[i] = (p.on[i] + s) % d;
          }
          std::sort(out.on.begin(), out.on.end());
          return Hypervector(std::move(out));
        } else {
          T out;
          out.v.resize(d);
          for (std::uint32_t i = 0; i < d; ++i) {
            out.v[(i + s) % d] = p.v[i];
          }
          return Hypervector(std::move(out));
        }
      },
      hv.payload());
}

}  // namespace hdc
