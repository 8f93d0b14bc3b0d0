#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdc/algebra.hpp"
#include "hdc/item_memory.hpp"

namespace hdc::langrec {

// ---------------------------------------------------------------------------
// Corpus handling
// ---------------------------------------------------------------------------

struct Corpus {
  struct Language {
    std::string label;
    std::vector<std::string> train;
    std::vector<std::string> test;
  };
  std::vector<Language> languages;
};

// Lowercases ASCII letters and collapses whitespace runs to single spaces.
inline std::string normalize_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(char(std::tolower(c)));
  }
  return out;
}

// Directory layout: <dir>/<label>/train.txt and test.txt, one sentence per
// line; labels come from the subdirectory names, sorted.
inline Corpus load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw DataError("corpus directory not found: " + dir);
  }
  std::vector<std::string> labels;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) labels.push_back(entry.path().filename());
  }
  std::sort(labels.begin(), labels.end());
  if (labels.empty()) throw DataError("corpus has no language directories");
  Corpus corpus;
  auto read_lines = [](const fs::path& p) {
    std::vector<std::string> lines;
    std::ifstream is(p);
    if (!is) throw DataError("cannot open " + p.string());
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
    return lines;
  };
  for (const auto& label : labels) {
    Corpus::Language lang;
    lang.label = label;
    lang.train = read_lines(fs::path(dir) / label / "train.txt");
    lang.test = read_lines(fs::path(dir) / label / "test.txt");
    corpus.languages.push_back(std::move(lang));
  }
  return corpus;
}

inline void save_corpus(const Corpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  for (const auto& lang : corpus.languages) {
    fs::create_directories(fs::path(dir) / lang.label);
    auto write_lines = [&](const char* name,
                           const std::vector<std::string>& lines) {
      std::ofstream os(fs::path(dir) / lang.label / name);
      if (!os) throw DataError("cannot write corpus files under " + dir);
      for (const auto& l : lines) os << l << '\n';
    };
    write_lines("train.txt", lang.train);
    write_lines("test.txt", lang.test);
  }
}

// Deterministic synthetic corpus: each language is a distinct first-order
// letter chain over a shared 20-letter alphabet, so trigram statistics
// separate the languages cleanly while the raw character set does not.
inline Corpus make_synthetic_corpus(std::uint32_t n_languages,
                                    std::uint32_t n_train,
                                    std::uint32_t n_test,
                                    std::uint64_t seed) {
  constexpr std::uint32_t kAlpha = 20;
  Corpus corpus;
  for (std::uint32_t lang = 0; lang < n_languages; ++lang) {
    // Language-specific transition weights, sharpened to favor a few
    // successors per letter.
    SeededRng wrng(seed, {0x1A6ULL, lang});
    std::vector<double> weights(kAlpha * kAlpha);
    for (auto& w : weights) {
      const double u = wrng.uniform();
      w = u * u * u * u;
    }
    std::vector<double> row_sum(kAlpha, 0.0);
    for (std::uint32_t a = 0; a < kAlpha; ++a) {
      for (std::uint32_t b = 0; b < kAlpha; ++b) {
        row_sum[a] += weights[a * kAlpha + b];
      }
    }
    auto sample_next = [&](SeededRng& rng, std::uint32_t current) {
      double x = rng.uniform() * row_sum[current];
      for (std::uint32_t b = 0; b < kAlpha; ++b) {
        x -= weights[current * kAlpha + b];
        if (x <= 0.0) return b;
      }
      return kAlpha - 1;
    };
    auto make_sentence = [&](SeededRng& rng) {
      std::string s;
      const auto words = 6 + std::uint32_t(rng.below(7));
      for (std::uint32_t w = 0; w < words; ++w) {
        if (w > 0) s.push_back(' ');
        auto c = std::uint32_t(rng.below(kAlpha));
        const auto len = 3 + std::uint32_t(rng.below(6));
        for (std::uint32_t i = 0; i < len; ++i) {
          s.push_back(char('a' + c));
          c = sample_next(rng, c);
        }
      }
      return s;
    };
    Corpus::Language out;
    out.label = "lang" + std::to_string(lang);
    for (std::uint32_t i = 0; i < n_train; ++i) {
      SeededRng rng(seed, {0x7EA11ULL, lang, i});
      out.train.push_back(make_sentence(rng));
    }
    for (std::uint32_t i = 0; i < n_test; ++i) {
      SeededRng rng(seed, {0x7E57ULL, lang, i});
      out.test.push_back(make_sentence(rng));
    }
    corpus.languages.push_back(std::move(out));
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Letter memory plus one bundled vector per trained language. Letter vectors
// are fixed random, keyed by character code, so models with the same config
// agree regardless of corpus order.
class LanguageModel {
 public:
  LanguageModel(VsaConfig cfg, std::uint32_t n, const std::string& alphabet)
      : cfg_(std::move(cfg)),
        n_(n),
        letters_(cfg_),
        languages_(cfg_) {
    if (n_ == 0) throw ArgumentError("n-gram order must be at least 1");
    cfg_.validate();
    std::string alpha = alphabet;
    if (alpha.find(' ') == std::string::npos) alpha.push_back(' ');
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    for (char c : alpha) {
      SeededRng rng(cfg_.seed,
                    {0x1e77e5ULL, std::uint64_t(static_cast<unsigned char>(c))});
      letters_.add(std::string(1, c), random_vector(cfg_, rng));
    }
  }

  static LanguageModel from_corpus(const VsaConfig& cfg, std::uint32_t n,
                                   const Corpus& corpus) {
    std::string alphabet;
    for (const auto& lang : corpus.languages) {
      for (const auto& sentence : lang.train) {
        for (char c : normalize_text(sentence)) alphabet.push_back(c);
      }
    }
    LanguageModel model(cfg, n, alphabet);
    for (const auto& lang : corpus.languages) {
      model.train_language(lang.label, lang.train);
    }
    return model;
  }

  const VsaConfig& config() const { return cfg_; }
  std::uint32_t ngram_order() const { return n_; }
  const ItemMemory& letters() const { return letters_; }
  const ItemMemory& languages() const { return languages_; }
  std::uint64_t skipped_sentences() const { return skipped_; }

  // Binding of position-permuted letter vectors for one n-gram.
  Hypervector encode_ngram(const std::string& gram) const {
    if (gram.size() != n_) {
      throw EncodingError("gram length " + std::to_string(gram.size()) +
                          " does not match order " + std::to_string(n_));
    }
    auto it = gram_cache_.find(gram);
    if (it != gram_cache_.end()) return it->second;
    Hypervector acc = permute(letter_vector(gram[0]), 0);
    for (std::uint32_t j = 1; j < n_; ++j) {
      acc = bind(cfg_, acc, permute(letter_vector(gram[j]), j));
    }
    gram_cache_.emplace(gram, acc);
    return acc;
  }

  // Bundles every sliding-window n-gram of every sentence into one language
  // vector. Thresholded kinds accumulate and threshold once at the end;
  // sparse kinds are thinned to a maximum density of one half.
  void train_language(const std::string& label,
                      const std::vector<std::string>& sentences) {
    Accumulator acc(cfg_);
    std::uint64_t grams = 0;
    for (const auto& sentence : sentences) {
      const auto text = normalize_text(sentence);
      if (text.size() < n_) {
        ++skipped_;
        continue;
      }
      for (std::size_t i = 0; i + n_ <= text.size(); ++i) {
        acc.add(encode_ngram(text.substr(i, n_)));
        ++grams;
      }
    }
    if (grams == 0) {
      throw EncodingError("no n-grams in the training sentences for '" +
                          label + "'");
    }
    SeededRng tie(cfg_.seed, {0x7121eULL, detail::fnv1a(label)});
    languages_.add(label, acc.finalize(tie));
  }

  struct Classification {
    std::string label;
    double score = 0.0;
    std::vector<std::pair<std::string, double>> ranking;
  };

  // Encodes the text exactly like training and ranks all language vectors.
  Classification classify(const std::string& text) const {
    if (languages_.size() == 0) {
      throw StateError("classify on an untrained model");
    }
    const auto probe = encode_text(text);
    Classification out;
    const auto hits = languages_.query_top_k(probe, languages_.size());
    for (const auto& h : hits) out.ranking.emplace_back(h.label, h.score);
    out.label = hits.front().label;
    out.score = hits.front().score;
    return out;
  }

  Hypervector encode_text(const std::string& raw) const {
    const auto text = normalize_text(raw);
    Accumulator acc(cfg_);
    std::uint64_t grams = 0;
    if (text.size() >= n_) {
      for (std::size_t i = 0; i + n_ <= text.size(); ++i) {
        acc.add(encode_ngram(text.substr(i, n_)));
        ++grams;
      }
    }
    if (grams == 0) {
      throw EncodingError("text yields no n-grams of order " +
                          std::to_string(n_));
    }
    SeededRng tie(cfg_.seed, {0xC1a55ULL, detail::fnv1a(text)});
    return acc.finalize(tie);
  }

  struct Evaluation {
    struct PerLanguage {
      std::string label;
      std::uint32_t total = 0;
      std::uint32_t correct = 0;
      double accuracy = 0.0;
    };
    std::vector<PerLanguage> per_language;
    double overall = 0.0;
  };

  // Fraction of test sentences classified correctly. Sentences that cannot
  // be encoded (unknown characters, too short) count as misclassified.
  Evaluation evaluate(const Corpus& corpus) const {
    Evaluation eval;
    std::uint32_t correct = 0, total = 0;
    for (const auto& lang : corpus.languages) {
      Evaluation::PerLanguage row;
      row.label = lang.label;
      for (const auto& sentence : lang.test) {
        ++row.total;
        try {
          if (classify(sentence).label == lang.label) ++row.correct;
        } catch (const EncodingError&) {
          // unencodable test sentence counts against accuracy
        }
      }
      if (row.total == 0) {
        throw ArgumentError("language '" + lang.label +
                            "' has no test sentences");
      }
      row.accuracy = double(row.correct) / double(row.total);
      correct += row.correct;
      total += row.total;
      eval.per_language.push_back(std::move(row));
    }
    if (total == 0) throw ArgumentError("corpus has no test sentences");
    eval.overall = double(correct) / double(total);
    return eval;
  }

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open " + path + " for writing");
    os.write("HVLM", 4);
    io::detail::put<std::uint32_t>(os, n_);
    io::detail::put<std::uint64_t>(os, skipped_);
    letters_.write(os);
    languages_.write(os);
  }

  static LanguageModel load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HVLM", 4) != 0) {
      throw DataError("bad magic: expected HVLM model file");
    }
    const auto n = io::detail::get<std::uint32_t>(is);
    const auto skipped = io::detail::get<std::uint64_t>(is);
    auto letters = ItemMemory::read(is);
    auto languages = ItemMemory::read(is);
    LanguageModel model(letters.config(), n, letters, languages);
    model.skipped_ = skipped;
    return model;
  }

 private:
  LanguageModel(VsaConfig cfg, std::uint32_t n, ItemMemory letters,
                ItemMemory languages)
      : cfg_(std::move(cfg)),
        n_(n),
        letters_(std::move(letters)),
        languages_(std::move(languages)) {}

  const Hypervector& letter_vector(char c) const {
    const auto* hv = letters_.find(std::string(1, c));
    if (!hv) {
      throw EncodingError(std::string("character '") + c +
                          "' is not in the model alphabet");
    }
    return *hv;
  }

  // Wide per-kind accumulator so thresholds and normalization apply once.
  class Accumulator {
   public:
    explicit Accumulator(const VsaConfig& cfg) : cfg_(cfg) {
      switch (cfg_.kind) {
        case VsaKind::MapC:
        case VsaKind::Hrr:
        case VsaKind::Vtb:
        case VsaKind::Mbat:
          real_.assign(cfg_.dim, 0.0);
          break;
        case VsaKind::Fhrr:
          real_.assign(cfg_.dim, 0.0);
          imag_.assign(cfg_.dim, 0.0);
          break;
        case VsaKind::MapB:
        case VsaKind::MapI:
        case VsaKind::Bsc:
          ints_.assign(cfg_.dim, 0);
          break;
        default:
          bits_.assign(cfg_.dim, 0);
          break;
      }
    }

    void add(const Hypervector& hv) {
      ++count_;
      switch (cfg_.kind) {
        case VsaKind::MapC:
        case VsaKind::Hrr:
        case VsaKind::Vtb:
        case VsaKind::Mbat: {
          const auto& v = hv.as<DenseReal>().v;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) real_[i] += v[i];
          break;
        }
        case VsaKind::Fhrr: {
          const auto& v = hv.as<AngleVec>().v;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) {
            real_[i] += std::cos(v[i]);
            imag_[i] += std::sin(v[i]);
          }
          break;
        }
        case VsaKind::MapB: {
          const auto& v = hv.as<Bipolar>().v;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) ints_[i] += v[i];
          break;
        }
        case VsaKind::MapI: {
          const auto& v = hv.as<IntegerVec>().v;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) ints_[i] += v[i];
          break;
        }
        case VsaKind::Bsc: {
          const auto& v = hv.as<DenseBinary>();
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) ints_[i] += v.get(i);
          break;
        }
        default: {
          for (std::uint32_t i : hv.as<SparseBinary>().on) bits_[i] = 1;
          break;
        }
      }
    }

    Hypervector finalize(SeededRng& tie) const {
      switch (cfg_.kind) {
        case VsaKind::MapC: {
          DenseReal out;
          out.v = real_;
          for (auto& x : out.v) x = std::clamp(x, -1.0, 1.0);
          return Hypervector(std::move(out));
        }
        case VsaKind::Hrr:
        case VsaKind::Vtb:
        case VsaKind::Mbat: {
          DenseReal out;
          out.v = real_;
          double norm = 0.0;
          for (double x : out.v) norm += x * x;
          norm = std::sqrt(norm);
          if (norm > 0.0) {
            for (auto& x : out.v) x /= norm;
          }
          return Hypervector(std::move(out));
        }
        case VsaKind::Fhrr: {
          AngleVec out;
          out.v.resize(cfg_.dim);
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) {
            if (std::abs(real_[i]) < 1e-12 && std::abs(imag_[i]) < 1e-12) {
              out.v[i] = tie.uniform_angle();
            } else {
              out.v[i] = wrap_angle(std::atan2(imag_[i], real_[i]));
            }
          }
          return Hypervector(std::move(out));
        }
        case VsaKind::MapB: {
          Bipolar out;
          out.v.resize(cfg_.dim);
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) {
            out.v[i] = ints_[i] > 0   ? std::int8_t(1)
                       : ints_[i] < 0 ? std::int8_t(-1)
                       : tie.bernoulli(0.5) ? std::int8_t(1)
                                            : std::int8_t(-1);
          }
          return Hypervector(std::move(out));
        }
        case VsaKind::MapI: {
          IntegerVec out;
          out.v = ints_;
          return Hypervector(std::move(out));
        }
        case VsaKind::Bsc: {
          auto out = DenseBinary::zeros(cfg_.dim);
          const double half = double(count_) / 2.0;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) {
            if (double(ints_[i]) > half) {
              out.set(i, true);
            } else if (double(ints_[i]) == half) {
              out.set(i, tie.bernoulli(0.5));
            }
          }
          return Hypervector(std::move(out));
        }
        default: {
          SparseBinary out;
          out.dim = cfg_.dim;
          for (std::uint32_t i = 0; i < cfg_.dim; ++i) {
            if (bits_[i]) out.on.push_back(i);
          }
          return thin(Hypervector(std::move(out)),
                      cfg_.max_density.value_or(0.5), tie);
        }
      }
    }

   private:
    const VsaConfig& cfg_;
    std::vector<double> real_, imag_;
    std::vector<std::int64_t> ints_;
    std::vector<std::uint8_t> bits_;
    std::uint64_t count_ = 0;
  };

  VsaConfig cfg_;
  std::uint32_t n_;
  ItemMemory letters_;
  ItemMemory languages_;
  std::uint64_t skipped_ = 0;
  mutable std::unordered_map<std::string, Hypervector> gram_cache_;
};

}  // namespace hdc::langrec
