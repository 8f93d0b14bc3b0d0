#pragma once

#include <cblas.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hdc/algebra.hpp"
#include "hdc/fft.hpp"
#include "hdc/io.hpp"
#include "hdc/similarity.hpp"
#include "hdc/spaces.hpp"

namespace hdc::placerec {

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

// Row-major matrix of image descriptors (one row per image).
struct DescriptorSet {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> data;
  std::string name;

  float at(std::uint32_t r, std::uint32_t c) const {
    return data[std::size_t(r) * cols + c];
  }
  float& at(std::uint32_t r, std::uint32_t c) {
    return data[std::size_t(r) * cols + c];
  }
};

inline void validate(const DescriptorSet& ds) {
  if (ds.rows == 0 || ds.cols == 0) {
    throw DataError("descriptor set '" + ds.name + "' is empty");
  }
  for (std::uint32_t r = 0; r < ds.rows; ++r) {
    for (std::uint32_t c = 0; c < ds.cols; ++c) {
      if (!std::isfinite(ds.at(r, c))) {
        throw DataError("non-finite descriptor value in '" + ds.name +
                        "' at row " + std::to_string(r));
      }
    }
  }
}

// VSAD: magic "VSAD" | u32 rows | u32 cols | f32 LE row-major.
inline void save_vsad(const DescriptorSet& ds, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open " + path + " for writing");
  os.write("VSAD", 4);
  io::detail::put<std::uint32_t>(os, ds.rows);
  io::detail::put<std::uint32_t>(os, ds.cols);
  os.write(reinterpret_cast<const char*>(ds.data.data()),
           std::streamsize(ds.data.size() * sizeof(float)));
}

inline void save_csv(const DescriptorSet& ds, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path + " for writing");
  for (std::uint32_t r = 0; r < ds.rows; ++r) {
    for (std::uint32_t c = 0; c < ds.cols; ++c) {
      if (c) os << ',';
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.9g", double(ds.at(r, c)));
      os << buf;
    }
    os << '\n';
  }
}

inline DescriptorSet load_descriptors(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path);
  DescriptorSet ds;
  ds.name = path;
  char magic[4] = {};
  is.read(magic, 4);
  if (is && std::memcmp(magic, "VSAD", 4) == 0) {
    ds.rows = io::detail::get<std::uint32_t>(is);
    ds.cols = io::detail::get<std::uint32_t>(is);
    ds.data.resize(std::size_t(ds.rows) * ds.cols);
    is.read(reinterpret_cast<char*>(ds.data.data()),
            std::streamsize(ds.data.size() * sizeof(float)));
    if (!is) throw DataError("truncated VSAD file: " + path);
    validate(ds);
    return ds;
  }
  // CSV fallback: one row per line, comma separated.
  is.clear();
  is.seekg(0);
  std::string line;
  std::uint32_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::uint32_t cols = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        ds.data.push_back(std::stof(cell));
      } catch (const std::exception&) {
        throw DataError("malformed CSV value '" + cell + "' at row " +
                        std::to_string(row) + " in " + path);
      }
      ++cols;
    }
    if (ds.cols == 0) {
      ds.cols = cols;
    } else if (cols != ds.cols) {
      throw DataError("ragged CSV row " + std::to_string(row) + " in " +
                      path);
    }
    ++row;
  }
  ds.rows = row;
  validate(ds);
  return ds;
}

// Dimension-wise standardization: every column to mean 0, variance 1;
// zero-variance columns become zeros.
inline DescriptorSet standardize(const DescriptorSet& ds) {
  if (ds.rows < 2) {
    throw ArgumentError("standardize needs at least two descriptor rows");
  }
  DescriptorSet out = ds;
  for (std::uint32_t c = 0; c < ds.cols; ++c) {
    double mean = 0.0;
    for (std::uint32_t r = 0; r < ds.rows; ++r) mean += ds.at(r, c);
    mean /= ds.rows;
    double var = 0.0;
    for (std::uint32_t r = 0; r < ds.rows; ++r) {
      const double d = ds.at(r, c) - mean;
      var += d * d;
    }
    var /= ds.rows;
    const double sd = std::sqrt(var);
    for (std::uint32_t r = 0; r < ds.rows; ++r) {
      out.at(r, c) =
          sd > 0.0 ? float((ds.at(r, c) - mean) / sd) : 0.0f;
    }
  }
  return out;
}

// M x N Gaussian projection matrix, rows normalized to unit length.
inline std::vector<double> make_projection(std::uint32_t m, std::uint32_t n,
                                           SeededRng& rng) {
  std::vector<double> p(std::size_t(m) * n);
  for (auto& x : p) x = rng.normal();
  for (std::uint32_t r = 0; r < m; ++r) {
    double norm = 0.0;
    for (std::uint32_t c = 0; c < n; ++c) norm += p[std::size_t(r) * n + c] *
                                                  p[std::size_t(r) * n + c];
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (std::uint32_t c = 0; c < n; ++c) p[std::size_t(r) * n + c] /= norm;
    }
  }
  return p;
}

// out = ds * P with P of shape (ds.cols x n).
inline DescriptorSet project(const DescriptorSet& ds,
                             const std::vector<double>& projection,
                             std::uint32_t n) {
  if (projection.size() != std::size_t(ds.cols) * n) {
    throw ArgumentError("projection matrix shape mismatch");
  }
  std::vector<double> in(ds.data.begin(), ds.data.end());
  std::vector<double> out(std::size_t(ds.rows) * n, 0.0);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, blasint(ds.rows),
              blasint(n), blasint(ds.cols), 1.0, in.data(), blasint(ds.cols),
              projection.data(), blasint(n), 0.0, out.data(), blasint(n));
  DescriptorSet res;
  res.rows = ds.rows;
  res.cols = n;
  res.name = ds.name;
  res.data.assign(out.begin(), out.end());
  return res;
}

inline DescriptorSet random_project(const DescriptorSet& ds, std::uint32_t n,
                                    SeededRng& rng) {
  if (n == 0) throw ArgumentError("projection dimension must be positive");
  return project(ds, make_projection(ds.cols, n, rng), n);
}

// ---------------------------------------------------------------------------
// Per-space descriptor encodings
// ---------------------------------------------------------------------------

namespace detail {

// Sparse locality-sensitive binary hash: concatenate [z; -z] and set the
// ceil(sqrt(2D)) largest values, giving 2D bits at density 1/sqrt(2D).
inline SparseBinary slsbh(const float* row, std::uint32_t d) {
  const std::uint32_t d2 = 2 * d;
  std::vector<double> z(d2);
  for (std::uint32_t i = 0; i < d; ++i) {
    z[i] = row[i];
    z[d + i] = -double(row[i]);
  }
  const auto keep = std::uint32_t(std::ceil(std::sqrt(double(d2))));
  std::vector<std::uint32_t> order(d2);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return z[a] > z[b];
                   });
  SparseBinary out;
  out.dim = d2;
  out.on.assign(order.begin(), order.begin() + keep);
  std::sort(out.on.begin(), out.on.end());
  return out;
}

}  // namespace detail

// Converts projected, standardized descriptors into the architecture's
// space. Sparse kinds double the dimensionality via sLSBH, so their config
// must sit at 2 * ds.cols; every other kind matches ds.cols directly.
inline std::vector<Hypervector> encode_for_space(const DescriptorSet& ds,
                                                 const VsaConfig& cfg) {
  const bool sparse = is_sparse_binary(cfg.kind);
  if (!sparse && cfg.dim != ds.cols) {
    throw ArgumentError("descriptor columns (" + std::to_string(ds.cols) +
                        ") do not match config dim (" +
                        std::to_string(cfg.dim) + ")");
  }
  if (sparse && cfg.dim != 2 * ds.cols) {
    throw ArgumentError(
        "sparse encodings double the dimensionality: config dim must be 2x "
        "the descriptor columns");
  }
  std::vector<Hypervector> out;
  out.reserve(ds.rows);
  const std::uint32_t d = ds.cols;
  for (std::uint32_t r = 0; r < ds.rows; ++r) {
    const float* row = ds.data.data() + std::size_t(r) * d;
    switch (cfg.kind) {
      case VsaKind::MapB: {
        Bipolar p;
        p.v.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) {
          p.v[i] = row[i] > 0.0f ? 1 : -1;
        }
        out.emplace_back(std::move(p));
        break;
      }
      case VsaKind::MapI: {
        IntegerVec p;
        p.v.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) {
          p.v[i] = row[i] > 0.0f ? 1 : -1;
        }
        out.emplace_back(std::move(p));
        break;
      }
      case VsaKind::Bsc: {
        auto p = DenseBinary::zeros(d);
        for (std::uint32_t i = 0; i < d; ++i) {
          if (row[i] > 0.0f) p.set(i, true);
        }
        out.emplace_back(std::move(p));
        break;
      }
      case VsaKind::MapC: {
        DenseReal p;
        p.v.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) {
          p.v[i] = std::clamp(double(row[i]), -1.0, 1.0);
        }
        out.emplace_back(std::move(p));
        break;
      }
      case VsaKind::Hrr:
      case VsaKind::Vtb:
      case VsaKind::Mbat: {
        DenseReal p;
        p.v.resize(d);
        double norm = 0.0;
        for (std::uint32_t i = 0; i < d; ++i) norm += double(row[i]) * row[i];
        norm = std::sqrt(norm);
        for (std::uint32_t i = 0; i < d; ++i) {
          p.v[i] = norm > 0.0 ? row[i] / norm : 0.0;
        }
        out.emplace_back(std::move(p));
        break;
      }
      case VsaKind::Fhrr: {
        std::vector<double> signal(row, row + d);
        out.emplace_back(AngleVec{fft::dft_phases(signal)});
        break;
      }
      case VsaKind::BsdcS:
      case VsaKind::BsdcSeg:
      case VsaKind::BsdcCdt: {
        out.emplace_back(detail::slsbh(row, d));
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Similarity matrices, SeqSLAM, sequence encoding
// ---------------------------------------------------------------------------

// Database x query score matrix.
struct SimilarityMatrix {
  std::uint32_t rows = 0;  // database images
  std::uint32_t cols = 0;  // query images
  std::vector<double> s;

  double at(std::uint32_t i, std::uint32_t j) const {
    return s[std::size_t(i) * cols + j];
  }
  double& at(std::uint32_t i, std::uint32_t j) {
    return s[std::size_t(i) * cols + j];
  }
};

inline SimilarityMatrix pairwise_similarity(
    const VsaConfig& cfg, const std::vector<Hypervector>& database,
    const std::vector<Hypervector>& queries) {
  SimilarityMatrix m;
  m.rows = std::uint32_t(database.size());
  m.cols = std::uint32_t(queries.size());
  m.s.resize(std::size_t(m.rows) * m.cols);
  for (std::uint32_t i = 0; i < m.rows; ++i) {
    for (std::uint32_t j = 0; j < m.cols; ++j) {
      m.at(i, j) = similarity(cfg, database[i], queries[j]);
    }
  }
  return m;
}

// Diagonal averaging of the simplified SeqSLAM core (constant velocity).
// Border cells average only the in-range diagonal terms.
inline SimilarityMatrix seqslam_filter(const SimilarityMatrix& s, int d) {
  if (d < 0) throw ArgumentError("sequence half-length must be >= 0");
  SimilarityMatrix r;
  r.rows = s.rows;
  r.cols = s.cols;
  r.s.assign(s.s.size(), 0.0);
  for (std::int64_t i = 0; i < s.rows; ++i) {
    for (std::int64_t j = 0; j < s.cols; ++j) {
      double acc = 0.0;
      int terms = 0;
      for (int k = -d; k <= d; ++k) {
        const std::int64_t ii = i + k;
        const std::int64_t jj = j + k;
        if (ii < 0 || jj < 0 || ii >= s.rows || jj >= s.cols) continue;
        acc += s.at(std::uint32_t(ii), std::uint32_t(jj));
        ++terms;
      }
      r.at(std::uint32_t(i), std::uint32_t(j)) = acc / double(terms);
    }
  }
  return r;
}

// Sequence encoding: each descriptor is replaced by a bundle of its
// neighborhood, every neighbor bound to a static position vector shared by
// database and queries. Borders bundle only the in-range terms.
inline std::vector<Hypervector> vsa_sequence_encode(
    const VsaConfig& cfg, const std::vector<Hypervector>& vectors, int d) {
  if (d < 0) throw ArgumentError("sequence half-length must be >= 0");
  std::vector<Hypervector> positions;
  positions.reserve(2 * d + 1);
  for (int k = -d; k <= d; ++k) {
    SeededRng rng(cfg.seed, {0x905171ULL, std::uint64_t(k + d)});
    positions.push_back(random_vector(cfg, rng));
  }
  std::vector<Hypervector> out;
  out.reserve(vectors.size());
  const auto n = std::int64_t(vectors.size());
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<Hypervector> parts;
    parts.reserve(2 * d + 1);
    for (int k = -d; k <= d; ++k) {
      const std::int64_t idx = i + k;
      if (idx < 0 || idx >= n) continue;
      parts.push_back(bind(cfg, vectors[idx], positions[k + d]));
    }
    SeededRng tie(cfg.seed, {0x905272ULL, std::uint64_t(i)});
    out.push_back(bundle(cfg, parts, tie));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct GroundTruth {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> positive;

  bool at(std::uint32_t i, std::uint32_t j) const {
    return positive[std::size_t(i) * cols + j] != 0;
  }
};

inline GroundTruth load_gt_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path);
  GroundTruth gt;
  std::string line;
  std::uint32_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::uint32_t cols = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell != "0" && cell != "1") {
        throw DataError("ground truth must be 0/1; got '" + cell +
                        "' at row " + std::to_string(row));
      }
      gt.positive.push_back(cell == "1" ? 1 : 0);
      ++cols;
    }
    if (gt.cols == 0) {
      gt.cols = cols;
    } else if (cols != gt.cols) {
      throw DataError("ragged ground-truth row " + std::to_string(row));
    }
    ++row;
  }
  gt.rows = row;
  if (gt.rows == 0) throw DataError("empty ground-truth file " + path);
  return gt;
}

inline void save_gt_csv(const GroundTruth& gt, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path + " for writing");
  for (std::uint32_t i = 0; i < gt.rows; ++i) {
    for (std::uint32_t j = 0; j < gt.cols; ++j) {
      if (j) os << ',';
      os << (gt.at(i, j) ? '1' : '0');
    }
    os << '\n';
  }
}

// Area under the precision-recall curve: one point per distinct score
// threshold, trapezoidal integration over recall.
inline double pr_auc(const SimilarityMatrix& s, const GroundTruth& gt) {
  if (s.rows != gt.rows || s.cols != gt.cols) {
    throw ArgumentError("similarity and ground-truth shapes differ");
  }
  std::uint64_t total_positive = 0;
  for (auto p : gt.positive) total_positive += p;
  if (total_positive == 0) {
    throw ArgumentError("ground truth contains no positive matchings");
  }
  std::vector<std::pair<double, std::uint8_t>> scored;
  scored.reserve(s.s.size());
  for (std::size_t i = 0; i < s.s.size(); ++i) {
    scored.emplace_back(s.s[i], gt.positive[i]);
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double auc = 0.0;
  double prev_recall = 0.0, prev_precision = 1.0;
  bool first = true;
  std::uint64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < scored.size()) {
    const double threshold = scored[i].first;
    while (i < scored.size() && scored[i].first == threshold) {
      if (scored[i].second) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    const double precision = double(tp) / double(tp + fp);
    const double recall = double(tp) / double(total_positive);
    if (first) {
      prev_precision = precision;  // anchor the recall-zero endpoint
      first = false;
    }
    auc += (recall - prev_recall) * (precision + prev_precision) / 2.0;
    prev_recall = recall;
    prev_precision = precision;
  }
  return auc;
}

// ---------------------------------------------------------------------------
// Synthetic fixture
// ---------------------------------------------------------------------------

struct SyntheticPlaceData {
  DescriptorSet database;
  DescriptorSet queries;
  GroundTruth gt;  // diagonal matches
};

// A traversal revisited with additive noise: query i matches database i.
// Descriptors follow a smooth random walk so neighboring places look alike,
// which is what sequence filtering exploits.
inline SyntheticPlaceData make_synthetic_place_data(std::uint32_t n_images,
                                                    std::uint32_t dims,
                                                    double noise,
                                                    std::uint64_t seed) {
  SyntheticPlaceData out;
  out.database.rows = out.queries.rows = n_images;
  out.database.cols = out.queries.cols = dims;
  out.database.name = "synthetic-db";
  out.queries.name = "synthetic-query";
  out.database.data.resize(std::size_t(n_images) * dims);
  out.queries.data.resize(std::size_t(n_images) * dims);
  SeededRng walk(seed, {0x9a7aULL});
  std::vector<double> state(dims);
  for (auto& x : state) x = walk.normal();
  for (std::uint32_t i = 0; i < n_images; ++i) {
    SeededRng qn(seed, {0x90153ULL, i});
    for (std::uint32_t c = 0; c < dims; ++c) {
      state[c] = 0.9 * state[c] + 0.45 * walk.normal();
      out.database.at(i, c) = float(state[c]);
      out.queries.at(i, c) = float(state[c] + noise * qn.normal());
    }
  }
  out.gt.rows = out.gt.cols = n_images;
  out.gt.positive.assign(std::size_t(n_images) * n_images, 0);
  for (std::uint32_t i = 0; i < n_images; ++i) {
    out.gt.positive[std::size_t(i) * n_images + i] = 1;
  }
  return out;
}

}  // namespace hdc::placerec
