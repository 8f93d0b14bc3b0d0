// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured values. Tolerances are pinned in code.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hdc/cli.hpp"
#include "hdc/hdc.hpp"

using namespace hdc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;

struct KindTarget {
  VsaKind kind;
  std::uint32_t bundle_target;  // Table 2, "# dimensions to bundle 15 vectors"
  std::uint32_t pairs_target;   // Table 2, "# dimensions to bundle 15 pairs"
};

const std::vector<KindTarget> kTable2 = {
    {VsaKind::MapC, 640, 620},  {VsaKind::MapB, 790, 780},
    {VsaKind::Bsc, 750, 750},   {VsaKind::Hrr, 510, 520},
    {VsaKind::Fhrr, 330, 340},  {VsaKind::MapI, 470, 490},
    {VsaKind::Vtb, 510, 550},   {VsaKind::Mbat, 510, 570},
    {VsaKind::BsdcSeg, 320, 410}, {VsaKind::BsdcS, 320, 570}};

VsaConfig tpl(VsaKind kind) {
  VsaConfig cfg;
  cfg.kind = kind;
  cfg.dim = 4;
  cfg.seed = kSeed;
  return cfg;
}

bool window_holds(double measured, std::uint32_t target) {
  return measured >= 0.85 * target && measured <= 1.15 * target;
}

// Table 2 reports the straight-line fit over the per-k minimum dimensions
// (its values are multiples of ten, none of which lie on the i^2 grid), so
// both criteria compare the least-squares estimate at k=15 computed over a
// band of ks around it.
const std::vector<std::uint32_t> kFitKs{5, 10, 15, 20, 25, 30};

double fit_at_15(const MinDimsSummary& summary) {
  REQUIRE(summary.fit.has_value());
  return summary.fit->intercept + summary.fit->slope * 15.0;
}

// Shared across criteria 1 and 2.
const std::map<VsaKind, double>& bundle_min_dims() {
  static const auto dims = [] {
    std::map<VsaKind, double> out;
    const auto grid_dims = default_dims();
    for (const auto& t : kTable2) {
      const auto grid =
          run_capacity(tpl(t.kind), 1000, grid_dims, kFitKs, 10, 2);
      out[t.kind] = fit_at_15(min_dims(grid, 0.99));
    }
    return out;
  }();
  return dims;
}

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("hdcb");
  for (const auto& a : args) argv.push_back(a.c_str());
  return hdc::cli::run(int(argv.size()), argv.data());
}

std::string slurp(const std::string& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: Table 2 bundling minimum dimensions", "[acceptance]") {
  bool all = true;
  std::ostringstream detail;
  for (const auto& t : kTable2) {
    const auto measured = bundle_min_dims().at(t.kind);
    const bool ok = window_holds(measured, t.bundle_target);
    all = all && ok;
    detail << kind_name(t.kind) << "=" << int(measured) << "/"
           << t.bundle_target << (ok ? " " : "(out) ");
  }
  std::cout << "ACCEPTANCE C1 bundling min-D +-15% (fit at k=15): "
            << (all ? "PASS" : "FAIL") << " -- " << detail.str() << "\n";
  REQUIRE(all);
}

TEST_CASE("criterion 2: Table 2 bundled pairs", "[acceptance]") {
  const auto grid_dims = default_dims();
  std::map<VsaKind, double> pairs_dims;
  std::ostringstream detail;
  for (const auto& t : kTable2) {
    const auto grid =
        run_bundled_pairs(tpl(t.kind), 1000, grid_dims, kFitKs, 10, 2);
    pairs_dims[t.kind] = fit_at_15(min_dims(grid, 0.99));
    detail << kind_name(t.kind) << "=" << int(pairs_dims[t.kind]) << " ";
  }
  // Named reproduction windows.
  const bool fhrr_ok = window_holds(pairs_dims[VsaKind::Fhrr], 340);
  const bool seg_ok = window_holds(pairs_dims[VsaKind::BsdcSeg], 410);
  const bool s_ok = window_holds(pairs_dims[VsaKind::BsdcS], 570);
  // BSDC-S shows the largest relative increase, at least +30%.
  double s_increase = 0.0, largest_other = -1.0;
  for (const auto& t : kTable2) {
    const double inc =
        pairs_dims[t.kind] / bundle_min_dims().at(t.kind) - 1.0;
    if (t.kind == VsaKind::BsdcS) {
      s_increase = inc;
    } else {
      largest_other = std::max(largest_other, inc);
    }
  }
  const bool increase_ok = s_increase >= 0.30 && s_increase > largest_other;
  const bool all = fhrr_ok && seg_ok && s_ok && increase_ok;
  std::cout << "ACCEPTANCE C2 pairs min-D (fit at k=15): "
            << (all ? "PASS" : "FAIL") << " -- " << detail.str()
            << "| FHRR/340 " << (fhrr_ok ? "ok" : "OUT") << ", BSDC-SEG/410 "
            << (seg_ok ? "ok" : "OUT") << ", BSDC-S/570 "
            << (s_ok ? "ok" : "OUT") << ", BSDC-S increase "
            << int(s_increase * 100) << "% (largest other "
            << int(largest_other * 100) << "%)\n";
  REQUIRE(all);
}

TEST_CASE("criterion 3: approximate unbinding ordering", "[acceptance]") {
  const auto curves = run_approx_unbind(
      {VsaKind::Vtb, VsaKind::Hrr, VsaKind::MapC}, 1024, 40, 20, kSeed, 2);
  const auto& vtb = curves[0].mean;
  const auto& hrr = curves[1].mean;
  const auto& mapc = curves[2].mean;
  bool order = true;
  for (std::uint32_t n = 5; n <= 40; ++n) {
    order = order && vtb[n] >= hrr[n] && hrr[n] >= mapc[n];
  }
  const double gap = vtb[40] - hrr[40];
  const bool ok = order && gap >= 0.02;
  std::cout << "ACCEPTANCE C3 approx-unbind VTB>=HRR>=MAP-C on n in [5,40]: "
            << (ok ? "PASS" : "FAIL") << " -- gap@40=" << gap << " (vtb="
            << vtb[40] << ", hrr=" << hrr[40] << ", mapc=" << mapc[40]
            << ")\n";
  REQUIRE(ok);
}

TEST_CASE("criterion 4: exactness sweep", "[acceptance]") {
  std::uint32_t failures = 0;
  for (VsaKind k : {VsaKind::Bsc, VsaKind::MapB, VsaKind::Fhrr,
                    VsaKind::BsdcS, VsaKind::BsdcSeg, VsaKind::Mbat}) {
    auto cfg = VsaConfig::make(k, 1024, kSeed);
    for (std::uint64_t s = 0; s < 1000; ++s) {
      SeededRng rng(kSeed, {0xACC4ULL, std::uint64_t(k), s});
      const auto a = random_vector(cfg, rng);
      const auto b = random_vector(cfg, rng);
      const auto rec = unbind(cfg, a, bind(cfg, a, b));
      bool ok = true;
      if (k == VsaKind::Mbat) {
        const auto& x = rec.as<DenseReal>().v;
        const auto& y = b.as<DenseReal>().v;
        for (std::uint32_t i = 0; i < cfg.dim; ++i) {
          ok = ok && std::abs(x[i] - y[i]) < 1e-9;
        }
      } else if (k == VsaKind::Fhrr) {
        const auto& x = rec.as<AngleVec>().v;
        const auto& y = b.as<AngleVec>().v;
        for (std::uint32_t i = 0; i < cfg.dim; ++i) {
          ok = ok && std::abs(wrap_angle(x[i] - y[i])) < 1e-9;
        }
      } else {
        ok = rec == b;  // bit-exact
      }
      failures += !ok;
    }
  }
  // Self-inverse kinds: the unbind dispatcher IS the bind dispatcher.
  for (VsaKind k :
       {VsaKind::MapC, VsaKind::MapB, VsaKind::MapI, VsaKind::Bsc}) {
    auto cfg = VsaConfig::make(k, 1024, kSeed);
    for (std::uint64_t s = 0; s < 1000; ++s) {
      SeededRng rng(kSeed, {0xACC5ULL, std::uint64_t(k), s});
      const auto a = random_vector(cfg, rng);
      const auto b = random_vector(cfg, rng);
      failures += !(unbind(cfg, a, b) == bind(cfg, a, b));
    }
  }
  std::cout << "ACCEPTANCE C4 exactness (1000 cases/kind at D=1024): "
            << (failures == 0 ? "PASS" : "FAIL") << " -- failures="
            << failures << "\n";
  REQUIRE(failures == 0);
}

TEST_CASE("criterion 5: quasi-orthogonality at D=10000", "[acceptance]") {
  double worst = 0.0;
  for (VsaKind k : {VsaKind::MapC, VsaKind::MapB, VsaKind::Hrr}) {
    auto cfg = VsaConfig::make(k, 10000, kSeed);
    for (std::uint64_t t = 0; t < 1000; ++t) {
      SeededRng ra(kSeed, {0xACC5AULL, std::uint64_t(k), t, 0});
      SeededRng rb(kSeed, {0xACC5AULL, std::uint64_t(k), t, 1});
      worst = std::max(worst, std::abs(similarity(cfg, random_vector(cfg, ra),
                                                  random_vector(cfg, rb))));
    }
  }
  const bool ok = worst < 0.1;
  std::cout << "ACCEPTANCE C5 quasi-orthogonality (1000 pairs, D=10000): "
            << (ok ? "PASS" : "FAIL") << " -- worst |cos|=" << worst << "\n";
  REQUIRE(ok);
}

TEST_CASE("criterion 6: dollar of Mexico", "[acceptance]") {
  bool all = true;
  std::ostringstream detail;
  for (VsaKind k :
       {VsaKind::MapB, VsaKind::MapC, VsaKind::MapI, VsaKind::Bsc}) {
    auto cfg = VsaConfig::make(k, 2048, kSeed);
    const auto report =
        run_dollar_of_mexico(cfg, 100, ReasoningPath::OneStep, 97);
    const bool ok = report.accuracy >= 0.99;
    all = all && ok;
    detail << kind_name(k) << "(1-step)=" << report.accuracy * 100 << "% ";
  }
  for (VsaKind k : {VsaKind::Fhrr, VsaKind::Hrr, VsaKind::Vtb, VsaKind::Mbat,
                    VsaKind::BsdcS, VsaKind::BsdcSeg}) {
    // VTB needs a perfect square; 2025 = 45^2 is the nearest to 2048.
    const std::uint32_t dim = k == VsaKind::Vtb ? 2025 : 2048;
    auto cfg = VsaConfig::make(k, dim, kSeed);
    const auto report =
        run_dollar_of_mexico(cfg, 100, ReasoningPath::TwoStep, 97);
    const bool ok = report.accuracy >= 0.95;
    all = all && ok;
    detail << kind_name(k) << "(2-step)=" << report.accuracy * 100 << "% ";
  }
  bool error_ok = false;
  try {
    auto cfg = VsaConfig::make(VsaKind::Fhrr, 2048, kSeed);
    run_dollar_of_mexico(cfg, 1, ReasoningPath::OneStep, 7);
  } catch (const UnsupportedOperationError&) {
    error_ok = true;
  }
  all = all && error_ok;
  std::cout << "ACCEPTANCE C6 dollar-of-Mexico: " << (all ? "PASS" : "FAIL")
            << " -- " << detail.str()
            << (error_ok ? "one-step-rejection ok" : "one-step-rejection MISSING")
            << "\n";
  REQUIRE(all);
}

TEST_CASE("criterion 7: language recognition trends", "[acceptance]") {
  const auto corpus = langrec::make_synthetic_corpus(5, 200, 50, 2026);
  bool all = true;
  std::ostringstream detail;
  for (const auto& t : kTable2) {
    const VsaKind k = t.kind;
    auto accuracy_at = [&](std::uint32_t dim) {
      double mean = 0.0;
      for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        VsaConfig cfg;
        cfg.kind = k;
        cfg.dim = dim;
        cfg.seed = seed;
        cfg.validate();
        const auto model = langrec::LanguageModel::from_corpus(cfg, 3, corpus);
        mean += model.evaluate(corpus).overall / 3.0;
      }
      return mean;
    };
    const std::uint32_t high_dim = k == VsaKind::Vtb ? 2025 : 2000;
    const double high = accuracy_at(high_dim);
    const double low = accuracy_at(100);
    const bool ok = high >= 3.0 * 0.2 && high >= low;
    all = all && ok;
    detail << kind_name(k) << "=" << low << "->" << high
           << (ok ? " " : "(FAIL) ");
  }
  std::cout << "ACCEPTANCE C7 langrec (acc@2000 >= 3x chance and >= acc@100, "
               "3-seed mean): "
            << (all ? "PASS" : "FAIL") << " -- " << detail.str() << "\n";
  REQUIRE(all);
}

TEST_CASE("criterion 8: place recognition pipeline", "[acceptance]") {
  // seqslam equals the brute-force oracle up to 50x50.
  bool oracle_ok = true;
  {
    placerec::SimilarityMatrix s;
    s.rows = s.cols = 50;
    s.s.resize(2500);
    SeededRng rng(3);
    for (auto& v : s.s) v = rng.uniform();
    for (int d : {0, 2, 5, 9}) {
      const auto fast = placerec::seqslam_filter(s, d);
      for (std::int64_t i = 0; i < 50 && oracle_ok; ++i) {
        for (std::int64_t j = 0; j < 50; ++j) {
          double acc = 0.0;
          int cnt = 0;
          for (int k = -d; k <= d; ++k) {
            if (i + k < 0 || j + k < 0 || i + k >= 50 || j + k >= 50) continue;
            acc += s.at(std::uint32_t(i + k), std::uint32_t(j + k));
            ++cnt;
          }
          if (std::abs(fast.at(std::uint32_t(i), std::uint32_t(j)) -
                       acc / cnt) > 1e-12) {
            oracle_ok = false;
            break;
          }
        }
      }
    }
  }

  // pr_auc is 1.0 on a perfectly separable matrix.
  bool auc_ok;
  {
    placerec::SimilarityMatrix s;
    s.rows = s.cols = 8;
    s.s.assign(64, 0.0);
    placerec::GroundTruth gt;
    gt.rows = gt.cols = 8;
    gt.positive.assign(64, 0);
    for (std::uint32_t i = 0; i < 8; ++i) {
      s.at(i, i) = 1.0;
      gt.positive[i * 8 + i] = 1;
    }
    auc_ok = placerec::pr_auc(s, gt) == 1.0;
  }

  // Synthetic sequence fixture: 200 db / 200 query descriptors with noise,
  // diagonal ground truth, d=5 at D=4096.
  const auto fixture = placerec::make_synthetic_place_data(200, 6144, 1.4, 7);
  const auto std_db = placerec::standardize(fixture.database);
  const auto std_q = placerec::standardize(fixture.queries);
  SeededRng proj_rng(kSeed, {0xACC8ULL});
  const auto projection = placerec::make_projection(6144, 4096, proj_rng);
  const auto db = placerec::project(std_db, projection, 4096);
  const auto q = placerec::project(std_q, projection, 4096);

  bool seq_ok = true;
  std::ostringstream detail;
  for (VsaKind k : {VsaKind::MapC, VsaKind::Hrr, VsaKind::Vtb, VsaKind::Mbat,
                    VsaKind::Fhrr}) {
    VsaConfig cfg;
    cfg.kind = k;
    cfg.dim = 4096;
    cfg.seed = kSeed;
    cfg.validate();
    const auto db_enc = placerec::encode_for_space(db, cfg);
    const auto q_enc = placerec::encode_for_space(q, cfg);
    const double auc_pairwise = placerec::pr_auc(
        placerec::pairwise_similarity(cfg, db_enc, q_enc), fixture.gt);
    const auto db_seq = placerec::vsa_sequence_encode(cfg, db_enc, 5);
    const auto q_seq = placerec::vsa_sequence_encode(cfg, q_enc, 5);
    const double auc_seq = placerec::pr_auc(
        placerec::pairwise_similarity(cfg, db_seq, q_seq), fixture.gt);
    const bool ok = auc_seq >= auc_pairwise;
    seq_ok = seq_ok && ok;
    detail << kind_name(k) << "=" << auc_pairwise << "->" << auc_seq
           << (ok ? " " : "(FAIL) ");
  }
  const bool all = oracle_ok && auc_ok && seq_ok;
  std::cout << "ACCEPTANCE C8 placerec: " << (all ? "PASS" : "FAIL")
            << " -- seqslam-oracle " << (oracle_ok ? "ok" : "FAIL")
            << ", perfect-auc " << (auc_ok ? "ok" : "FAIL")
            << ", seq>=pairwise: " << detail.str() << "\n";
  REQUIRE(all);
}

TEST_CASE("criterion 9: oracle equivalence", "[acceptance]") {
  bool conv_ok = true;
  for (std::uint32_t d : {64u, 257u, 512u}) {
    auto cfg = VsaConfig::make(VsaKind::Hrr, d, kSeed);
    SeededRng rng(kSeed, {0xACC9ULL, d});
    const auto a = random_vector(cfg, rng);
    const auto b = random_vector(cfg, rng);
    const auto fast = bind_circular_convolution(a, b);
    const auto& av = a.as<DenseReal>().v;
    const auto& bv = b.as<DenseReal>().v;
    for (std::uint32_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) {
        acc += bv[k] * av[(j + d - k) % d];
      }
      conv_ok = conv_ok && std::abs(acc - fast.as<DenseReal>().v[j]) < 1e-9;
    }
  }

  bool vtb_ok = true;
  {
    auto cfg = VsaConfig::make(VsaKind::Vtb, 256, kSeed);
    SeededRng rng(kSeed, {0xACC9BULL});
    const auto a = random_vector(cfg, rng);
    const auto b = random_vector(cfg, rng);
    const auto bound = bind_vtb(a, b);
    // Explicit block-diagonal matrix.
    const std::uint32_t dp = 16;
    const double scale = std::pow(256.0, 0.25);
    const auto& av = a.as<DenseReal>().v;
    const auto& bv = b.as<DenseReal>().v;
    for (std::uint32_t blk = 0; blk < dp && vtb_ok; ++blk) {
      for (std::uint32_t u = 0; u < dp; ++u) {
        double acc = 0.0;
        for (std::uint32_t v = 0; v < dp; ++v) {
          acc += scale * bv[u * dp + v] * av[blk * dp + v];
        }
        if (std::abs(acc - bound.as<DenseReal>().v[blk * dp + u]) > 1e-9) {
          vtb_ok = false;
          break;
        }
      }
    }
  }

  bool mbat_ok = true;
  {
    auto cfg = VsaConfig::make(VsaKind::Mbat, 256, kSeed);
    SeededRng rng(kSeed, {0xACC9CULL});
    const auto role = random_vector(cfg, rng);
    const auto filler = random_vector(cfg, rng);
    const auto bound = bind_mbat(cfg, role, filler);
    const auto& base = MbatBasis::get(cfg.seed, cfg.dim);
    const auto h = mbat_role_hash(role);
    const auto& fv = filler.as<DenseReal>().v;
    for (std::uint32_t i = 0; i < 256 && mbat_ok; ++i) {
      double acc = 0.0;
      for (std::uint32_t j = 0; j < 256; ++j) {
        acc += base.at((i + 256 - h) % 256, (j + 256 - h) % 256) * fv[j];
      }
      mbat_ok = std::abs(acc - bound.as<DenseReal>().v[i]) < 1e-9;
    }
  }
  const bool all = conv_ok && vtb_ok && mbat_ok;
  std::cout << "ACCEPTANCE C9 oracle equivalence: " << (all ? "PASS" : "FAIL")
            << " -- conv " << (conv_ok ? "ok" : "FAIL") << ", vtb "
            << (vtb_ok ? "ok" : "FAIL") << ", mbat "
            << (mbat_ok ? "ok" : "FAIL") << "\n";
  REQUIRE(all);
}

TEST_CASE("criterion 10: manifest determinism", "[acceptance]") {
  const auto dir = fs::temp_directory_path() / "hdc_acceptance_replay";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (dir / name).string(); };

  bool all = true;
  std::ostringstream detail;
  auto check_replay = [&](const std::string& label,
                          std::vector<std::string> args,
                          std::vector<std::string> outputs) {
    REQUIRE(run_cli(args) == 0);
    std::map<std::string, std::string> before;
    for (const auto& o : outputs) before[o] = slurp(o);
    for (const auto& o : outputs) fs::remove(o);
    REQUIRE(run_cli({"replay", outputs.front() + ".manifest.json"}) == 0);
    bool same = true;
    for (const auto& o : outputs) same = same && slurp(o) == before[o];
    all = all && same;
    detail << label << (same ? " ok; " : " DIFFERS; ");
  };

  check_replay("capacity",
               {"capacity", "--kind", "FHRR", "--fast", "--repeats", "2",
                "--ks", "5", "--n-items", "60", "--seed", "5", "--out",
                path("cap.csv")},
               {path("cap.csv"), path("cap.csv") + ".summary.json"});
  check_replay("pairs",
               {"pairs", "--kind", "BSC", "--fast", "--repeats", "2", "--ks",
                "3", "--n-items", "60", "--seed", "5", "--out",
                path("pairs.csv")},
               {path("pairs.csv"), path("pairs.csv") + ".summary.json"});
  check_replay("itemmem-sweep",
               {"itemmem-sweep", "--kind", "FHRR", "--fast", "--repeats",
                "2", "--k", "4", "--item-counts", "20,40", "--seed", "5",
                "--out", path("sweep.csv")},
               {path("sweep.csv")});
  check_replay("approx-unbind",
               {"approx-unbind", "--kinds", "HRR,VTB", "--dim", "256",
                "--n-max", "6", "--repeats", "3", "--seed", "5", "--out",
                path("unbind.csv")},
               {path("unbind.csv"), path("unbind.csv") + ".summary.json"});
  check_replay("reason",
               {"reason", "dollar-of-mexico", "--kind", "MAP-B", "--dim",
                "512", "--trials", "5", "--seed", "5", "--out",
                path("reason.csv")},
               {path("reason.csv")});

  // langrec: train writes a model, eval writes the CSV under test.
  REQUIRE(run_cli({"langrec", "synth", "--out", path("corpus"),
                   "--languages", "2", "--train", "25", "--test", "8",
                   "--seed", "5"}) == 0);
  REQUIRE(run_cli({"langrec", "train", "--corpus", path("corpus"), "--kind",
                   "FHRR", "--dim", "256", "--n", "3", "--seed", "5",
                   "--out", path("model.hvm")}) == 0);
  const auto model_bytes = slurp(path("model.hvm"));
  check_replay("langrec-eval",
               {"langrec", "eval", "--model", path("model.hvm"), "--corpus",
                path("corpus"), "--out", path("eval.csv")},
               {path("eval.csv")});
  REQUIRE(run_cli({"replay", path("model.hvm") + ".manifest.json"}) == 0);
  const bool model_same = slurp(path("model.hvm")) == model_bytes;
  all = all && model_same;
  detail << "langrec-train" << (model_same ? " ok; " : " DIFFERS; ");

  {
    const auto fixture = placerec::make_synthetic_place_data(24, 64, 1.0, 5);
    placerec::save_vsad(fixture.database, path("db.vsad"));
    placerec::save_vsad(fixture.queries, path("q.vsad"));
    placerec::save_gt_csv(fixture.gt, path("gt.csv"));
    check_replay("placerec",
                 {"placerec", "--db", path("db.vsad"), "--query",
                  path("q.vsad"), "--gt", path("gt.csv"), "--kind", "MAP-C",
                  "--dim", "128", "--seqlen", "2", "--seed", "5", "--out",
                  path("auc.csv")},
                 {path("auc.csv")});
  }

  std::cout << "ACCEPTANCE C10 determinism via manifests: "
            << (all ? "PASS" : "FAIL") << " -- " << detail.str() << "\n";
  fs::remove_all(dir);
  REQUIRE(all);
}
