#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "hdc/item_memory.hpp"
#include "hdc/reasoning.hpp"
#include "hdc/threading.hpp"

namespace hdc {

// Dimension grid of the capacity experiments: i^2 for i = 2..34, which keeps
// every dimension a perfect square (VTB) and every sqrt(D) an integer
// segment count (BSDC-SEG).
inline std::vector<std::uint32_t> default_dims(bool fast = false) {
  std::vector<std::uint32_t> dims;
  for (std::uint32_t i = 2; i <= 34; i += fast ? 4 : 1) dims.push_back(i * i);
  return dims;
}

inline std::vector<std::uint32_t> default_ks(bool fast = false) {
  std::vector<std::uint32_t> ks;
  for (std::uint32_t k = 2; k <= 50; k += fast ? 4 : 1) ks.push_back(k);
  return ks;
}

// Accuracy surface over (dims x ks): means over `repeats` runs plus the
// raw per-repeat cells for long-format reporting.
struct CapacityGrid {
  VsaKind kind = VsaKind::MapC;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint32_t> ks;
  std::uint32_t repeats = 0;
  std::vector<double> accuracy;    // dims-major means
  std::vector<double> per_repeat;  // (dim, repeat, k) raveled

  double at(std::size_t dim_idx, std::size_t k_idx) const {
    return accuracy[dim_idx * ks.size() + k_idx];
  }
  double& at(std::size_t dim_idx, std::size_t k_idx) {
    return accuracy[dim_idx * ks.size() + k_idx];
  }
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Smallest sampled dimension reaching the accuracy threshold, per k.
struct MinDimsSummary {
  VsaKind kind = VsaKind::MapC;
  double threshold = 0.99;
  struct Entry {
    std::uint32_t k = 0;
    bool reachable = false;
    std::uint32_t min_dim = 0;
  };
  std::vector<Entry> entries;
  std::optional<LineFit> fit;  // least squares over (k, min_dim)
};

namespace detail {

// Memory scan specialized per payload so grid sweeps stay cheap; scores are
// identical to similarity().
class PreparedMemory {
 public:
  explicit PreparedMemory(const ItemMemory& mem) : mem_(mem) {
    const auto& cfg = mem.config();
    if (cfg.kind == VsaKind::Fhrr) {
      const auto n = mem.size();
      phasors_.resize(n * 2 * cfg.dim);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& ang = mem.vector(i).as<AngleVec>().v;
        double* row = phasors_.data() + i * 2 * cfg.dim;
        for (std::uint32_t j = 0; j < cfg.dim; ++j) {
          row[2 * j] = std::cos(ang[j]);
          row[2 * j + 1] = std::sin(ang[j]);
        }
      }
    }
  }

  std::vector<double> scores(const Hypervector& probe) const {
    const auto& cfg = mem_.config();
    std::vector<double> out(mem_.size());
    if (cfg.kind == VsaKind::Fhrr) {
      const auto& ang = probe.as<AngleVec>().v;
      std::vector<double> q(2 * cfg.dim);
      for (std::uint32_t j = 0; j < cfg.dim; ++j) {
        q[2 * j] = std::cos(ang[j]);
        q[2 * j + 1] = std::sin(ang[j]);
      }
      for (std::size_t i = 0; i < mem_.size(); ++i) {
        const double* row = phasors_.data() + i * 2 * cfg.dim;
        double dot = 0.0;
        for (std::uint32_t j = 0; j < 2 * cfg.dim; ++j) dot += row[j] * q[j];
        out[i] = dot / double(cfg.dim);  // sum of cos(a-b) per dim
      }
      return out;
    }
    for (std::size_t i = 0; i < mem_.size(); ++i) {
      out[i] = similarity(cfg, probe, mem_.vector(i));
    }
    return out;
  }

  // Indices of the k best scores, ties toward the lower index.
  std::vector<std::size_t> top_k(const Hypervector& probe,
                                 std::size_t k) const {
    const auto s = scores(probe);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });
    order.resize(k);
    return order;
  }

 private:
  const ItemMemory& mem_;
  std::vector<double> phasors_;
};

inline VsaConfig at_dim(VsaConfig cfg, std::uint32_t dim) {
  cfg.dim = dim;
  cfg.segments = 0;  // re-derive the segment layout for the new dimension
  cfg.validate();
  return cfg;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bundling capacity (the "how many vectors fit in one bundle" experiment)
// ---------------------------------------------------------------------------

// One cell: bundle k distinct items from a fresh N-item memory and count how
// many of them the top-k query returns.
inline double capacity_cell(const VsaConfig& cfg_template, std::uint32_t dim,
                            std::uint32_t k, std::uint32_t n_items,
                            std::uint32_t repeat) {
  const auto cfg = detail::at_dim(cfg_template, dim);
  const auto mem = ItemMemory::populate_random(
      cfg, n_items,
      mix_stream({cfg_template.seed, 0xCA9A71ULL, dim, repeat}));
  const detail::PreparedMemory prepared(mem);
  SeededRng pick(cfg_template.seed, {0xCA9A72ULL, dim, k, repeat});
  const auto chosen = pick.sample(n_items, k);
  std::vector<Hypervector> parts;
  parts.reserve(k);
  for (auto i : chosen) parts.push_back(mem.vector(i));
  const auto bundled = bundle(cfg, parts, pick);
  std::uint32_t hits = 0;
  try {
    const auto top = prepared.top_k(bundled, k);
    for (auto idx : top) {
      if (std::find(chosen.begin(), chosen.end(), std::uint32_t(idx)) !=
          chosen.end()) {
        ++hits;
      }
    }
  } catch (const ArgumentError&) {
    // degenerate all-zero bundle at tiny D: nothing is retrievable
  }
  return double(hits) / double(k);
}

inline CapacityGrid run_capacity(const VsaConfig& cfg_template,
                                 std::uint32_t n_items,
                                 const std::vector<std::uint32_t>& dims,
                                 const std::vector<std::uint32_t>& ks,
                                 std::uint32_t repeats,
                                 unsigned threads = default_threads()) {
  for (auto k : ks) {
    if (k > n_items) throw ArgumentError("capacity: k exceeds item count");
  }
  CapacityGrid grid;
  grid.kind = cfg_template.kind;
  grid.dims = dims;
  grid.ks = ks;
  grid.repeats = repeats;
  grid.accuracy.assign(dims.size() * ks.size(), 0.0);
  // One task per (dim, repeat); the item memory is shared across all ks.
  grid.per_repeat.assign(dims.size() * repeats * ks.size(), 0.0);
  auto& partial = grid.per_repeat;
  parallel_for(dims.size() * repeats, threads, [&](std::size_t task) {
    const std::size_t di = task / repeats;
    const auto repeat = std::uint32_t(task % repeats);
    const auto cfg = detail::at_dim(cfg_template, dims[di]);
    const auto mem = ItemMemory::populate_random(
        cfg, n_items,
        mix_stream({cfg_template.seed, 0xCA9A71ULL, dims[di], repeat}));
    const detail::PreparedMemory prepared(mem);
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      const auto k = ks[ki];
      SeededRng pick(cfg_template.seed,
                     {0xCA9A72ULL, dims[di], k, repeat});
      const auto chosen = pick.sample(n_items, k);
      std::vector<Hypervector> parts;
      parts.reserve(k);
      for (auto i : chosen) parts.push_back(mem.vector(i));
      const auto bundled = bundle(cfg, parts, pick);
      std::uint32_t hits = 0;
      try {
        const auto top = prepared.top_k(bundled, k);
        for (auto idx : top) {
          if (std::find(chosen.begin(), chosen.end(), std::uint32_t(idx)) !=
              chosen.end()) {
            ++hits;
          }
        }
      } catch (const ArgumentError&) {
        // degenerate all-zero bundle at tiny D: nothing is retrievable
      }
      partial[task * ks.size() + ki] = double(hits) / double(k);
    }
  });
  for (std::size_t di = 0; di < dims.size(); ++di) {
    for (std::uint32_t r = 0; r < repeats; ++r) {
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        grid.at(di, ki) +=
            partial[(di * repeats + r) * ks.size() + ki] / repeats;
      }
    }
  }
  return grid;
}

inline MinDimsSummary min_dims(const CapacityGrid& grid,
                               double threshold = 0.99) {
  MinDimsSummary summary;
  summary.kind = grid.kind;
  summary.threshold = threshold;
  std::vector<double> xs, ys;
  for (std::size_t ki = 0; ki < grid.ks.size(); ++ki) {
    MinDimsSummary::Entry e;
    e.k = grid.ks[ki];
    for (std::size_t di = 0; di < grid.dims.size(); ++di) {
      if (grid.at(di, ki) >= threshold) {
        e.reachable = true;
        e.min_dim = grid.dims[di];
        break;
      }
    }
    if (e.reachable) {
      xs.push_back(double(e.k));
      ys.push_back(double(e.min_dim));
    }
    summary.entries.push_back(e);
  }
  if (xs.size() >= 2) {
    const double n = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    LineFit fit;
    const double denom = n * sxx - sx * sx;
    if (denom != 0.0) {
      fit.slope = (n * sxy - sx * sy) / denom;
      fit.intercept = (sy - fit.slope * sx) / n;
      double ss = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
      }
      fit.residual_rms = std::sqrt(ss / n);
      summary.fit = fit;
    }
  }
  return summary;
}

// Ascending scan with early exit; used where only the min dimension at one k
// is needed (acceptance checks, item-memory sweep).
inline std::optional<std::uint32_t> capacity_min_dim(
    const VsaConfig& cfg_template, std::uint32_t k, std::uint32_t n_items,
    const std::vector<std::uint32_t>& dims, std::uint32_t repeats,
    double threshold = 0.99, unsigned threads = default_threads()) {
  for (auto dim : dims) {
    std::vector<double> acc(repeats, 0.0);
    parallel_for(repeats, threads, [&](std::size_t r) {
      acc[r] = capacity_cell(cfg_template, dim, k, n_items, std::uint32_t(r));
    });
    double mean = 0.0;
    for (double a : acc) mean += a / repeats;
    if (mean >= threshold) return dim;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Item-memory size sweep (fixed k, growing N)
// ---------------------------------------------------------------------------

struct ItemmemSweepPoint {
  std::uint32_t n_items = 0;
  bool reachable = false;
  std::uint32_t min_dim = 0;
};

inline std::vector<ItemmemSweepPoint> run_itemmem_sweep(
    const VsaConfig& cfg_template, std::uint32_t k,
    const std::vector<std::uint32_t>& item_counts,
    const std::vector<std::uint32_t>& dims, std::uint32_t repeats,
    double threshold = 0.99, unsigned threads = default_threads()) {
  std::vector<ItemmemSweepPoint> out;
  for (auto n : item_counts) {
    if (k > n) throw ArgumentError("itemmem sweep: k exceeds item count");
    ItemmemSweepPoint point;
    point.n_items = n;
    const auto dim =
        capacity_min_dim(cfg_template, k, n, dims, repeats, threshold, threads);
    if (dim) {
      point.reachable = true;
      point.min_dim = *dim;
    }
    out.push_back(point);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Approximate unbinding of bound chains
// ---------------------------------------------------------------------------

struct ApproxUnbindCurve {
  VsaKind kind = VsaKind::MapC;
  bool exact_control = false;  // kind has an exact inverse; flat 1.0 expected
  std::vector<std::vector<double>> per_seed;  // seeds x (n_max+1)
  std::vector<double> mean;                   // per n
};

// Similarity rescaled so the kind's minimum maps to 0 and maximum to 1.
inline double normalized_similarity(VsaKind kind, double s) {
  switch (kind) {
    case VsaKind::Bsc:
    case VsaKind::BsdcCdt:
    case VsaKind::BsdcS:
    case VsaKind::BsdcSeg:
      return s;  // already in [0,1]
    default:
      return (s + 1.0) / 2.0;  // cosine-like scores in [-1,1]
  }
}

// Chained binding S = ((v (x) r1) (x) r2) ... then reverse unbinding; the
// curve reports the normalized similarity of the recovered vector to v.
inline ApproxUnbindCurve run_approx_unbind_curve(
    const VsaConfig& cfg_template, std::uint32_t n_max, std::uint32_t seeds,
    unsigned threads = default_threads()) {
  ApproxUnbindCurve curve;
  curve.kind = cfg_template.kind;
  curve.exact_control = binding_traits(cfg_template.kind).exact_inverse;
  curve.per_seed.assign(seeds, std::vector<double>(n_max + 1, 1.0));
  const auto cfg = cfg_template;
  parallel_for(seeds, threads, [&](std::size_t s) {
    SeededRng rng(cfg.seed, {0xAB1DULL, s});
    auto v = random_vector(cfg, rng);
    std::vector<Hypervector> chain;
    auto bound = v;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
      chain.push_back(random_vector(cfg, rng));
      bound = bind(cfg, bound, chain.back());
      auto recovered = bound;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        recovered = unbind(cfg, *it, recovered);
      }
      curve.per_seed[s][n] =
          normalized_similarity(cfg.kind, similarity(cfg, recovered, v));
    }
  });
  curve.mean.assign(n_max + 1, 0.0);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    for (std::uint32_t s = 0; s < seeds; ++s) {
      curve.mean[n] += curve.per_seed[s][n] / seeds;
    }
  }
  return curve;
}

inline std::vector<ApproxUnbindCurve> run_approx_unbind(
    const std::vector<VsaKind>& kinds, std::uint32_t dim, std::uint32_t n_max,
    std::uint32_t seeds, std::uint64_t seed,
    unsigned threads = default_threads()) {
  std::vector<ApproxUnbindCurve> out;
  for (VsaKind k : kinds) {
    VsaConfig cfg;
    cfg.kind = k;
    cfg.dim = dim;
    cfg.seed = seed;
    cfg.validate();
    out.push_back(run_approx_unbind_curve(cfg, n_max, seeds, threads));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unbinding of bundled role-filler pairs
// ---------------------------------------------------------------------------

// One cell: bundle k bound pairs, then recover each filler by unbinding its
// role from the bundle and cleaning up against the full memory. Fillers are
// the query targets for every kind: the reverse direction is undefined for
// the hash-keyed bindings (MBAT, BSDC-S), which retain no role content.
namespace detail {

inline double pairs_query_accuracy(const VsaConfig& cfg, const ItemMemory& mem,
                                   const PreparedMemory& prepared,
                                   std::uint32_t k, SeededRng& pick) {
  const auto chosen =
      pick.sample(std::uint32_t(mem.size()), 2 * k);
  std::vector<Hypervector> bound;
  bound.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    bound.push_back(
        bind(cfg, mem.vector(chosen[i]), mem.vector(chosen[k + i])));
  }
  const auto bundled = bundle(cfg, bound, pick);
  std::uint32_t hits = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    try {
      const auto probe =
          unbind_filler_given_role(cfg, mem.vector(chosen[i]), bundled);
      if (prepared.top_k(probe, 1).front() == chosen[k + i]) ++hits;
    } catch (const ArgumentError&) {
      // a zero-norm probe retrieves nothing
    }
  }
  return double(hits) / double(k);
}

}  // namespace detail

inline double pairs_cell(const VsaConfig& cfg_template, std::uint32_t dim,
                         std::uint32_t k, std::uint32_t n_items,
                         std::uint32_t repeat) {
  if (2 * k > n_items) {
    throw ArgumentError("pairs: 2k exceeds the item count");
  }
  const auto cfg = detail::at_dim(cfg_template, dim);
  const auto mem = ItemMemory::populate_random(
      cfg, n_items,
      mix_stream({cfg_template.seed, 0xBA1D01ULL, dim, repeat}));
  const detail::PreparedMemory prepared(mem);
  SeededRng pick(cfg_template.seed, {0xBA1D02ULL, dim, k, repeat});
  return detail::pairs_query_accuracy(cfg, mem, prepared, k, pick);
}

inline CapacityGrid run_bundled_pairs(const VsaConfig& cfg_template,
                                      std::uint32_t n_items,
                                      const std::vector<std::uint32_t>& dims,
                                      const std::vector<std::uint32_t>& ks,
                                      std::uint32_t repeats,
                                      unsigned threads = default_threads()) {
  for (auto k : ks) {
    if (2 * k > n_items) throw ArgumentError("pairs: 2k exceeds item count");
  }
  CapacityGrid grid;
  grid.kind = cfg_template.kind;
  grid.dims = dims;
  grid.ks = ks;
  grid.repeats = repeats;
  grid.accuracy.assign(dims.size() * ks.size(), 0.0);
  grid.per_repeat.assign(dims.size() * repeats * ks.size(), 0.0);
  auto& partial = grid.per_repeat;
  parallel_for(dims.size() * repeats, threads, [&](std::size_t task) {
    const std::size_t di = task / repeats;
    const auto repeat = std::uint32_t(task % repeats);
    const auto cfg = detail::at_dim(cfg_template, dims[di]);
    const auto mem = ItemMemory::populate_random(
        cfg, n_items,
        mix_stream({cfg_template.seed, 0xBA1D01ULL, dims[di], repeat}));
    const detail::PreparedMemory prepared(mem);
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      SeededRng pick(cfg_template.seed,
                     {0xBA1D02ULL, dims[di], ks[ki], repeat});
      partial[task * ks.size() + ki] =
          detail::pairs_query_accuracy(cfg, mem, prepared, ks[ki], pick);
    }
  });
  for (std::size_t di = 0; di < dims.size(); ++di) {
    for (std::uint32_t r = 0; r < repeats; ++r) {
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        grid.at(di, ki) +=
            partial[(di * repeats + r) * ks.size() + ki] / repeats;
      }
    }
  }
  return grid;
}

inline std::optional<std::uint32_t> pairs_min_dim(
    const VsaConfig& cfg_template, std::uint32_t k, std::uint32_t n_items,
    const std::vector<std::uint32_t>& dims, std::uint32_t repeats,
    double threshold = 0.99, unsigned threads = default_threads()) {
  for (auto dim : dims) {
    std::vector<double> acc(repeats, 0.0);
    parallel_for(repeats, threads, [&](std::size_t r) {
      acc[r] = pairs_cell(cfg_template, dim, k, n_items, std::uint32_t(r));
    });
    double mean = 0.0;
    for (double a : acc) mean += a / repeats;
    if (mean >= threshold) return dim;
  }
  return std::nullopt;
}

}  // namespace hdc
