#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "hdc/config.hpp"
#include "hdc/hypervector.hpp"

namespace hdc {

namespace detail {

template <class T>
double cosine(const std::vector<T>& a, const std::vector<T>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = double(a[i]);
    const double y = double(b[i]);
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) {
    throw ArgumentError("similarity undefined for a zero-norm vector");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline std::uint64_t overlap(const SparseBinary& a, const SparseBinary& b) {
  std::uint64_t c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.on.size() && j < b.on.size()) {
    if (a.on[i] == b.on[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a.on[i] < b.on[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

}  // namespace detail

// Per-architecture similarity of Table 1: cosine for the real spaces,
// complementary Hamming distance for BSC, normalized overlap for the sparse
// codes, and the mean angular cosine for FHRR.
inline double similarity(const VsaConfig& cfg, const Hypervector& a,
                         const Hypervector& b) {
  require_conforming(cfg, a, "left operand");
  require_conforming(cfg, b, "right operand");
  switch (cfg.kind) {
    case VsaKind::MapC:
    case VsaKind::Hrr:
    case VsaKind::Vtb:
    case VsaKind::Mbat:
      return detail::cosine(a.as<DenseReal>().v, b.as<DenseReal>().v);
    case VsaKind::MapB:
      return detail::cosine(a.as<Bipolar>().v, b.as<Bipolar>().v);
    case VsaKind::MapI:
      return detail::cosine(a.as<IntegerVec>().v, b.as<IntegerVec>().v);
    case VsaKind::Bsc: {
      const auto& x = a.as<DenseBinary>();
      const auto& y = b.as<DenseBinary>();
      std::uint64_t ham = 0;
      for (std::size_t i = 0; i < x.words.size(); ++i) {
        ham += std::uint64_t(__builtin_popcountll(x.words[i] ^ y.words[i]));
      }
      return 1.0 - double(ham) / double(cfg.dim);
    }
    case VsaKind::BsdcCdt:
    case VsaKind::BsdcS:
    case VsaKind::BsdcSeg: {
      // Overlap normalized by the smaller popcount: 1 for identical
      // vectors, stays in [0,1], and with the fixed-cardinality atomic
      // initialization a fully contained vector always ranks at the top.
      const auto& x = a.as<SparseBinary>();
      const auto& y = b.as<SparseBinary>();
      const double denom =
          std::max<double>(1.0, double(std::min(x.on.size(), y.on.size())));
      return double(detail::overlap(x, y)) / denom;
    }
    case VsaKind::Fhrr: {
      const auto& x = a.as<AngleVec>().v;
      const auto& y = b.as<AngleVec>().v;
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += std::cos(x[i] - y[i]);
      return s / double(cfg.dim);
    }
  }
  throw ConfigError("unhandled kind");
}

// Indices of candidates by descending similarity; ties break toward the
// lower index so rankings are deterministic.
inline std::vector<std::size_t> rank_by_similarity(
    const VsaConfig& cfg, const Hypervector& query,
    std::span<const Hypervector> candidates) {
  if (candidates.empty()) {
    throw ArgumentError("rank_by_similarity: empty candidate list");
  }
  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    scores[i] = similarity(cfg, query, candidates[i]);
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return scores[i] > scores[j];
                   });
  return order;
}

}  // namespace hdc
