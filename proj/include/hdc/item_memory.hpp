#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hdc/config.hpp"
#include "hdc/io.hpp"
#include "hdc/similarity.hpp"
#include "hdc/spaces.hpp"

namespace hdc {

// Clean-up memory: a named store of atomic hypervectors answering top-k
// nearest-neighbor queries under the architecture's similarity metric.
// Immutable once populated; concurrent queries are safe.
class ItemMemory {
 public:
  explicit ItemMemory(VsaConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
  }

  // N atomic vectors labeled item_0..item_{N-1}, each drawn from its own
  // stream keyed by the item index, so population order never matters.
  // Experiments that need fresh items per repeat pass an item_seed override
  // while keeping cfg.seed (and with it e.g. the MBAT base matrix) fixed.
  static ItemMemory populate_random(
      const VsaConfig& cfg, std::uint32_t n,
      std::optional<std::uint64_t> item_seed = std::nullopt) {
    if (n == 0) throw ArgumentError("populate_random: N must be at least 1");
    ItemMemory mem(cfg);
    mem.entries_.reserve(n);
    const std::uint64_t base = item_seed.value_or(cfg.seed);
    for (std::uint32_t i = 0; i < n; ++i) {
      SeededRng rng(base, {0x6974656dULL /* "item" */, i});
      mem.add("item_" + std::to_string(i), random_vector(cfg, rng));
    }
    return mem;
  }

  void add(std::string label, Hypervector hv) {
    require_conforming(cfg_, hv, "entry");
    if (index_.contains(label)) {
      throw ArgumentError("duplicate label '" + label + "'");
    }
    index_.emplace(label, entries_.size());
    entries_.emplace_back(std::move(label), std::move(hv));
  }

  std::size_t size() const { return entries_.size(); }
  const VsaConfig& config() const { return cfg_; }

  const std::string& label(std::size_t i) const { return entries_[i].first; }
  const Hypervector& vector(std::size_t i) const { return entries_[i].second; }

  const Hypervector* find(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
  }

  struct Hit {
    std::size_t index;
    std::string label;
    double score;
  };

  // k entries with the highest similarity, descending; ties resolve toward
  // earlier insertion.
  std::vector<Hit> query_top_k(const Hypervector& probe,
                               std::size_t k) const {
    if (k < 1 || k > entries_.size()) {
      throw ArgumentError("query_top_k: k out of range");
    }
    std::vector<double> scores(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      scores[i] = similarity(cfg_, probe, entries_[i].second);
    }
    std::vector<std::size_t> order(entries_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(
        order.begin(), order.end(),
        [&](std::size_t i, std::size_t j) { return scores[i] > scores[j]; });
    std::vector<Hit> hits;
    hits.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      hits.push_back({order[i], entries_[order[i]].first, scores[order[i]]});
    }
    return hits;
  }

  // Nearest entry (clean-up).
  Hit cleanup(const Hypervector& probe) const {
    if (entries_.empty()) throw StateError("cleanup on an empty item memory");
    return query_top_k(probe, 1).front();
  }

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open " + path + " for writing");
    write(os);
  }

  void write(std::ostream& os) const {
    os.write("HVIM", 4);
    io::detail::put<std::uint8_t>(os, std::uint8_t(cfg_.kind));
    io::detail::put<std::uint32_t>(os, cfg_.dim);
    io::detail::put<double>(os, cfg_.density);
    io::detail::put<std::uint32_t>(os, cfg_.segments);
    io::detail::put<std::uint64_t>(os, cfg_.seed);
    io::detail::put<std::uint32_t>(os, std::uint32_t(entries_.size()));
    for (const auto& [label, hv] : entries_) {
      io::detail::put_string(os, label);
      io::write_vector(os, hv);
    }
  }

  static ItemMemory load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open " + path);
    return read(is);
  }

  static ItemMemory read(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HVIM", 4) != 0) {
      throw DataError("bad magic: expected HVIM container");
    }
    VsaConfig cfg;
    cfg.kind = VsaKind(io::detail::get<std::uint8_t>(is));
    cfg.dim = io::detail::get<std::uint32_t>(is);
    cfg.density = io::detail::get<double>(is);
    cfg.segments = io::detail::get<std::uint32_t>(is);
    cfg.seed = io::detail::get<std::uint64_t>(is);
    ItemMemory mem(cfg);
    const auto n = io::detail::get<std::uint32_t>(is);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::string label = io::detail::get_string(is);
      mem.add(std::move(label), io::read_vector(is));
    }
    return mem;
  }

  // Pairwise similarity matrix as CSV, labels in header and first column.
  void export_similarity_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open " + path + " for writing");
    os << "label";
    for (const auto& [label, hv] : entries_) os << ',' << label;
    os << '\n';
    for (const auto& [li, vi] : entries_) {
      os << li;
      for (const auto& [lj, vj] : entries_) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", similarity(cfg_, vi, vj));
        os << ',' << buf;
      }
      os << '\n';
    }
  }

 private:
  VsaConfig cfg_;
  std::vector<std::pair<std::string, Hypervector>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace hdc
