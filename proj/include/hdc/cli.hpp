#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdc/experiments.hpp"
#include "hdc/langrec.hpp"
#include "hdc/manifest.hpp"
#include "hdc/placerec.hpp"
#include "hdc/reasoning.hpp"

namespace hdc::cli {

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path + " for writing");
  return os;
}

inline std::vector<std::uint32_t> parse_u32_list(const std::string& csv) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::uint32_t(std::stoul(cell)));
    } catch (const std::exception&) {
      throw ConfigError("expected a comma-separated integer list, got '" +
                        csv + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

// Shared experiment options resolved from flags and HDCB_* environment
// variables.
struct CommonOpts {
  std::string kind_name = "FHRR";
  std::uint64_t seed = 1;
  std::uint32_t repeats = 10;
  unsigned threads = default_threads();
  bool fast = false;
  double density = 0.0;
  std::string out = "results.csv";
};

inline void add_common(CLI::App* cmd, CommonOpts& o, bool with_kind = true) {
  if (with_kind) {
    cmd->add_option("--kind", o.kind_name,
                    "architecture (" + all_kind_names() + ")")
        ->envname("HDCB_KIND")
        ->required();
  }
  cmd->add_option("--seed", o.seed, "base RNG seed")->envname("HDCB_SEED");
  cmd->add_option("--repeats", o.repeats, "repetitions per grid cell")
      ->envname("HDCB_REPEATS");
  cmd->add_option("--threads", o.threads, "worker thread cap")
      ->envname("HDCB_THREADS");
  cmd->add_flag("--fast", o.fast, "reduced grid for quick runs")
      ->envname("HDCB_FAST");
  cmd->add_option("--density", o.density, "sparse density (default 1/sqrt(D))")
      ->envname("HDCB_DENSITY");
  cmd->add_option("--out", o.out, "output CSV path")->envname("HDCB_OUT");
}

inline VsaConfig make_config(const CommonOpts& o, std::uint32_t dim) {
  VsaConfig cfg;
  cfg.kind = parse_kind(o.kind_name);
  cfg.dim = dim;
  cfg.seed = o.seed;
  cfg.density = o.density;
  cfg.validate();
  return cfg;
}

inline void write_grid_csv(const std::string& path, const CapacityGrid& grid) {
  auto os = open_out(path);
  os << "kind,D,k,repeat,accuracy\n";
  for (std::size_t di = 0; di < grid.dims.size(); ++di) {
    for (std::uint32_t r = 0; r < grid.repeats; ++r) {
      for (std::size_t ki = 0; ki < grid.ks.size(); ++ki) {
        os << kind_name(grid.kind) << ',' << grid.dims[di] << ','
           << grid.ks[ki] << ',' << r << ','
           << fmt(grid.per_repeat[(di * grid.repeats + r) * grid.ks.size() +
                                  ki])
           << '\n';
      }
    }
  }
}

inline nlohmann::json min_dims_json(const MinDimsSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : summary.entries) {
    nlohmann::json row{{"k", e.k}};
    if (e.reachable) {
      row["min_dim"] = e.min_dim;
    } else {
      row["min_dim"] = nullptr;
    }
    rows.push_back(row);
  }
  nlohmann::json j{{"kind", kind_name(summary.kind)},
                   {"threshold", summary.threshold},
                   {"min_dims", rows}};
  if (summary.fit) {
    j["fit"] = {{"slope", summary.fit->slope},
                {"intercept", summary.fit->intercept},
                {"residual_rms", summary.fit->residual_rms}};
  }
  return j;
}

inline void finish_run(RunManifest& manifest,
                       const std::chrono::steady_clock::time_point& start) {
  manifest.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  manifest.created_utc = utc_timestamp();
  manifest.save(manifest.outputs.front() + ".manifest.json");
}

// Capacity and bundled-pairs runs share all reporting plumbing.
inline int run_grid_experiment(const std::string& name, const CommonOpts& o,
                               std::uint32_t n_items,
                               const std::string& ks_csv, bool pairs) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = make_config(o, 4);
  const auto dims = default_dims(o.fast);
  const auto ks = ks_csv.empty() ? default_ks(o.fast) : parse_u32_list(ks_csv);
  const auto grid =
      pairs ? run_bundled_pairs(cfg, n_items, dims, ks, o.repeats, o.threads)
            : run_capacity(cfg, n_items, dims, ks, o.repeats, o.threads);
  write_grid_csv(o.out, grid);
  const auto summary = min_dims(grid, 0.99);
  const auto summary_path = o.out + ".summary.json";
  {
    auto os = open_out(summary_path);
    auto j = min_dims_json(summary);
    j["experiment"] = name;
    j["n_items"] = n_items;
    j["repeats"] = o.repeats;
    os << j.dump(2) << '\n';
  }
  RunManifest manifest;
  manifest.subcommand = name;
  manifest.argv = {name,
                   "--kind",
                   o.kind_name,
                   "--seed",
                   std::to_string(o.seed),
                   "--repeats",
                   std::to_string(o.repeats),
                   "--n-items",
                   std::to_string(n_items),
                   "--out",
                   o.out};
  if (!ks_csv.empty()) {
    manifest.argv.push_back("--ks");
    manifest.argv.push_back(ks_csv);
  }
  if (o.density > 0) {
    manifest.argv.push_back("--density");
    manifest.argv.push_back(fmt(o.density));
  }
  if (o.fast) manifest.argv.push_back("--fast");
  manifest.config = {{"kind", o.kind_name},  {"seed", o.seed},
                     {"repeats", o.repeats}, {"n_items", n_items},
                     {"fast", o.fast},       {"density", o.density},
                     {"dims", dims},         {"ks", ks}};
  manifest.outputs = {o.out, summary_path};
  manifest.seed = o.seed;
  finish_run(manifest, start);
  return 0;
}

}  // namespace detail

// Runs the command line; returns the process exit code (0 success, 2 config
// error, 3 data error).
inline int run(int argc, const char* const* argv) {
  using detail::CommonOpts;
  CLI::App app{"hyperdimensional computing benchmark suite"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  CommonOpts cap_opts;
  std::uint32_t cap_items = 1000;
  std::string cap_ks;
  auto* cap = app.add_subcommand(
      "capacity", "bundle k items, count how many the top-k query returns");
  detail::add_common(cap, cap_opts);
  cap->add_option("--n-items", cap_items, "item memory size");
  cap->add_option("--ks", cap_ks, "comma-separated bundle sizes");

  CommonOpts pair_opts;
  std::uint32_t pair_items = 1000;
  std::string pair_ks;
  auto* pairs = app.add_subcommand(
      "pairs", "bundle k bound role-filler pairs and recover the fillers");
  detail::add_common(pairs, pair_opts);
  pairs->add_option("--n-items", pair_items, "item memory size");
  pairs->add_option("--ks", pair_ks, "comma-separated pair counts");

  CommonOpts sweep_opts;
  std::uint32_t sweep_k = 10;
  std::string sweep_counts = "10,31,100,316,1000,3162,10000";
  double sweep_threshold = 0.99;
  auto* sweep = app.add_subcommand(
      "itemmem-sweep", "minimum dimension vs item memory size at fixed k");
  detail::add_common(sweep, sweep_opts);
  sweep->add_option("--k", sweep_k, "bundle size");
  sweep->add_option("--item-counts", sweep_counts,
                    "comma-separated memory sizes");
  sweep->add_option("--threshold", sweep_threshold, "accuracy threshold");

  CommonOpts unbind_opts;
  unbind_opts.repeats = 20;
  std::string unbind_kinds = "MAP-C,HRR,VTB";
  std::uint32_t unbind_dim = 1024;
  std::uint32_t unbind_nmax = 40;
  auto* unbind_cmd = app.add_subcommand(
      "approx-unbind", "recovered similarity after chained unbinding");
  detail::add_common(unbind_cmd, unbind_opts, /*with_kind=*/false);
  unbind_cmd->add_option("--kinds", unbind_kinds, "comma-separated kinds");
  unbind_cmd->add_option("--dim", unbind_dim, "dimensionality")
      ->envname("HDCB_DIM");
  unbind_cmd->add_option("--n-max", unbind_nmax, "longest chain length");

  CommonOpts reason_opts;
  std::uint32_t reason_dim = 2048;
  std::uint32_t reason_trials = 100;
  std::uint32_t reason_distractors = 97;
  std::string reason_path = "auto";
  auto* reason = app.add_subcommand("reason", "analogical reasoning demos");
  reason->require_subcommand(1);
  auto* dollar = reason->add_subcommand("dollar-of-mexico",
                                        "What is the Dollar of Mexico?");
  detail::add_common(dollar, reason_opts);
  dollar->add_option("--dim", reason_dim, "dimensionality")
      ->envname("HDCB_DIM");
  dollar->add_option("--trials", reason_trials, "seeded trials");
  dollar->add_option("--distractors", reason_distractors,
                     "distractor items in the clean-up memory");
  dollar->add_option("--path", reason_path, "auto, one-step or two-step");

  auto* langrec_cmd =
      app.add_subcommand("langrec", "n-gram language recognition");
  langrec_cmd->require_subcommand(1);

  CommonOpts lr_train_opts;
  lr_train_opts.out = "model.hvm";
  std::string lr_train_corpus;
  std::uint32_t lr_train_dim = 2048;
  std::uint32_t lr_train_n = 3;
  auto* lr_train = langrec_cmd->add_subcommand(
      "train", "bundle n-gram statistics into one vector per language");
  detail::add_common(lr_train, lr_train_opts);
  lr_train->add_option("--corpus", lr_train_corpus, "corpus directory")
      ->required();
  lr_train->add_option("--dim", lr_train_dim, "dimensionality")
      ->envname("HDCB_DIM");
  lr_train->add_option("--n", lr_train_n, "n-gram order");

  std::string lr_eval_model, lr_eval_corpus, lr_eval_out = "results.csv";
  auto* lr_eval = langrec_cmd->add_subcommand(
      "eval", "classify the test sentences of a corpus");
  lr_eval->add_option("--model", lr_eval_model, "trained model file")
      ->required();
  lr_eval->add_option("--corpus", lr_eval_corpus, "corpus directory")
      ->required();
  lr_eval->add_option("--out", lr_eval_out, "output CSV path")
      ->envname("HDCB_OUT");

  std::string lr_synth_out;
  std::uint32_t lr_synth_langs = 5, lr_synth_train = 200, lr_synth_test = 50;
  std::uint64_t lr_synth_seed = 1;
  auto* lr_synth = langrec_cmd->add_subcommand(
      "synth", "generate the deterministic synthetic mini corpus");
  lr_synth->add_option("--out", lr_synth_out, "corpus directory")->required();
  lr_synth->add_option("--languages", lr_synth_langs, "language count");
  lr_synth->add_option("--train", lr_synth_train, "training sentences each");
  lr_synth->add_option("--test", lr_synth_test, "test sentences each");
  lr_synth->add_option("--seed", lr_synth_seed, "corpus seed")
      ->envname("HDCB_SEED");

  CommonOpts pr_opts;
  std::string pr_db, pr_query, pr_gt, pr_mode = "all", pr_dump;
  std::uint32_t pr_dim = 4096;
  int pr_seqlen = 5;
  auto* pr = app.add_subcommand(
      "placerec", "sequence-based place recognition on descriptor files");
  detail::add_common(pr, pr_opts);
  pr->add_option("--db", pr_db, "database descriptors (VSAD or CSV)")
      ->required();
  pr->add_option("--query", pr_query, "query descriptors (VSAD or CSV)")
      ->required();
  pr->add_option("--gt", pr_gt, "ground-truth 0/1 CSV")->required();
  pr->add_option("--dim", pr_dim, "projected dimensionality")
      ->envname("HDCB_DIM");
  pr->add_option("--seqlen", pr_seqlen, "sequence half-length d");
  pr->add_option("--mode", pr_mode, "pairwise, seqslam, vsa or all");
  pr->add_option("--dump-similarity", pr_dump,
                 "optional CSV dump of the similarity matrix");

  auto* selftest = app.add_subcommand(
      "selftest", "quick invariant sweep over all architectures");

  std::string replay_path;
  auto* replay = app.add_subcommand(
      "replay", "re-run a command from its manifest, reproducing outputs");
  replay->add_option("manifest", replay_path, "manifest JSON path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cap->parsed()) {
      return detail::run_grid_experiment("capacity", cap_opts, cap_items,
                                         cap_ks, /*pairs=*/false);
    }
    if (pairs->parsed()) {
      return detail::run_grid_experiment("pairs", pair_opts, pair_items,
                                         pair_ks, /*pairs=*/true);
    }
    if (sweep->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto cfg = detail::make_config(sweep_opts, 4);
      const auto counts = detail::parse_u32_list(sweep_counts);
      const auto dims = default_dims(sweep_opts.fast);
      const auto points =
          run_itemmem_sweep(cfg, sweep_k, counts, dims, sweep_opts.repeats,
                            sweep_threshold, sweep_opts.threads);
      auto os = detail::open_out(sweep_opts.out);
      os << "kind,N,min_dim\n";
      for (const auto& p : points) {
        os << kind_name(cfg.kind) << ',' << p.n_items << ',';
        if (p.reachable) os << p.min_dim;
        os << '\n';
      }
      RunManifest manifest;
      manifest.subcommand = "itemmem-sweep";
      manifest.argv = {"itemmem-sweep",
                       "--kind",
                       sweep_opts.kind_name,
                       "--seed",
                       std::to_string(sweep_opts.seed),
                       "--repeats",
                       std::to_string(sweep_opts.repeats),
                       "--k",
                       std::to_string(sweep_k),
                       "--item-counts",
                       sweep_counts,
                       "--threshold",
                       detail::fmt(sweep_threshold),
                       "--out",
                       sweep_opts.out};
      if (sweep_opts.fast) manifest.argv.push_back("--fast");
      manifest.config = {{"kind", sweep_opts.kind_name},
                         {"k", sweep_k},
                         {"item_counts", counts},
                         {"threshold", sweep_threshold},
                         {"repeats", sweep_opts.repeats},
                         {"seed", sweep_opts.seed}};
      manifest.outputs = {sweep_opts.out};
      manifest.seed = sweep_opts.seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (unbind_cmd->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<VsaKind> kinds;
      {
        std::stringstream ss(unbind_kinds);
        std::string cell;
        while (std::getline(ss, cell, ',')) kinds.push_back(parse_kind(cell));
      }
      const auto curves =
          run_approx_unbind(kinds, unbind_dim, unbind_nmax,
                            unbind_opts.repeats, unbind_opts.seed,
                            unbind_opts.threads);
      auto os = detail::open_out(unbind_opts.out);
      os << "kind,n,seed,normalized_similarity\n";
      for (const auto& c : curves) {
        for (std::uint32_t s = 0; s < c.per_seed.size(); ++s) {
          for (std::uint32_t n = 0; n < c.per_seed[s].size(); ++n) {
            os << kind_name(c.kind) << ',' << n << ',' << s << ','
               << detail::fmt(c.per_seed[s][n]) << '\n';
          }
        }
        if (c.exact_control) {
          std::cerr << "note: " << kind_name(c.kind)
                    << " has an exact inverse; its curve is the constant 1.0 "
                       "control\n";
        }
      }
      const auto summary_path = unbind_opts.out + ".summary.json";
      {
        auto js = detail::open_out(summary_path);
        nlohmann::json j;
        j["experiment"] = "approx-unbind";
        j["dim"] = unbind_dim;
        nlohmann::json means;
        for (const auto& c : curves) {
          means[std::string(kind_name(c.kind))] = c.mean;
        }
        j["mean_by_n"] = means;
        js << j.dump(2) << '\n';
      }
      RunManifest manifest;
      manifest.subcommand = "approx-unbind";
      manifest.argv = {"approx-unbind",
                       "--kinds",
                       unbind_kinds,
                       "--dim",
                       std::to_string(unbind_dim),
                       "--n-max",
                       std::to_string(unbind_nmax),
                       "--repeats",
                       std::to_string(unbind_opts.repeats),
                       "--seed",
                       std::to_string(unbind_opts.seed),
                       "--out",
                       unbind_opts.out};
      manifest.config = {{"kinds", unbind_kinds},
                         {"dim", unbind_dim},
                         {"n_max", unbind_nmax},
                         {"seeds", unbind_opts.repeats},
                         {"seed", unbind_opts.seed}};
      manifest.outputs = {unbind_opts.out, summary_path};
      manifest.seed = unbind_opts.seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (dollar->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto cfg = detail::make_config(reason_opts, reason_dim);
      const auto path = parse_reasoning_path(reason_path);
      const auto report =
          run_dollar_of_mexico(cfg, reason_trials, path, reason_distractors);
      auto os = detail::open_out(reason_opts.out);
      os << "kind,trial,path,answer,correct,score\n";
      for (const auto& t : report.trials) {
        os << kind_name(cfg.kind) << ',' << t.trial << ',' << t.path << ','
           << t.answer << ',' << (t.correct ? 1 : 0) << ','
           << detail::fmt(t.score) << '\n';
      }
      std::cout << "accuracy " << detail::fmt(report.accuracy) << " over "
                << reason_trials << " trials\n";
      RunManifest manifest;
      manifest.subcommand = "reason dollar-of-mexico";
      manifest.argv = {"reason",
                       "dollar-of-mexico",
                       "--kind",
                       reason_opts.kind_name,
                       "--dim",
                       std::to_string(reason_dim),
                       "--trials",
                       std::to_string(reason_trials),
                       "--distractors",
                       std::to_string(reason_distractors),
                       "--path",
                       reason_path,
                       "--seed",
                       std::to_string(reason_opts.seed),
                       "--out",
                       reason_opts.out};
      manifest.config = {{"kind", reason_opts.kind_name},
                         {"dim", reason_dim},
                         {"trials", reason_trials},
                         {"distractors", reason_distractors},
                         {"path", reason_path},
                         {"seed", reason_opts.seed},
                         {"accuracy", report.accuracy}};
      manifest.outputs = {reason_opts.out};
      manifest.seed = reason_opts.seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (lr_train->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto cfg = detail::make_config(lr_train_opts, lr_train_dim);
      const auto corpus = langrec::load_corpus(lr_train_corpus);
      const auto model =
          langrec::LanguageModel::from_corpus(cfg, lr_train_n, corpus);
      model.save(lr_train_opts.out);
      if (model.skipped_sentences() > 0) {
        std::cerr << "note: skipped " << model.skipped_sentences()
                  << " sentences shorter than the n-gram order\n";
      }
      RunManifest manifest;
      manifest.subcommand = "langrec train";
      manifest.argv = {"langrec",
                       "train",
                       "--corpus",
                       lr_train_corpus,
                       "--kind",
                       lr_train_opts.kind_name,
                       "--dim",
                       std::to_string(lr_train_dim),
                       "--n",
                       std::to_string(lr_train_n),
                       "--seed",
                       std::to_string(lr_train_opts.seed),
                       "--out",
                       lr_train_opts.out};
      manifest.config = {{"corpus", lr_train_corpus},
                         {"kind", lr_train_opts.kind_name},
                         {"dim", lr_train_dim},
                         {"n", lr_train_n},
                         {"seed", lr_train_opts.seed},
                         {"skipped_sentences", model.skipped_sentences()}};
      manifest.outputs = {lr_train_opts.out};
      manifest.seed = lr_train_opts.seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (lr_eval->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto model = langrec::LanguageModel::load(lr_eval_model);
      const auto corpus = langrec::load_corpus(lr_eval_corpus);
      const auto eval = model.evaluate(corpus);
      auto os = detail::open_out(lr_eval_out);
      os << "kind,dim,language,total,correct,accuracy\n";
      const auto kname = kind_name(model.config().kind);
      for (const auto& row : eval.per_language) {
        os << kname << ',' << model.config().dim << ',' << row.label << ','
           << row.total << ',' << row.correct << ','
           << detail::fmt(row.accuracy) << '\n';
      }
      os << kname << ',' << model.config().dim << ",__overall__,,,"
         << detail::fmt(eval.overall) << '\n';
      std::cout << "overall accuracy " << detail::fmt(eval.overall) << '\n';
      RunManifest manifest;
      manifest.subcommand = "langrec eval";
      manifest.argv = {"langrec", "eval",     "--model", lr_eval_model,
                       "--corpus", lr_eval_corpus, "--out",   lr_eval_out};
      manifest.config = {{"model", lr_eval_model},
                         {"corpus", lr_eval_corpus},
                         {"overall_accuracy", eval.overall}};
      manifest.outputs = {lr_eval_out};
      manifest.seed = model.config().seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (lr_synth->parsed()) {
      const auto corpus = langrec::make_synthetic_corpus(
          lr_synth_langs, lr_synth_train, lr_synth_test, lr_synth_seed);
      langrec::save_corpus(corpus, lr_synth_out);
      std::cout << "wrote " << lr_synth_langs << " languages to "
                << lr_synth_out << '\n';
      return 0;
    }
    if (pr->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      if (pr_mode != "pairwise" && pr_mode != "seqslam" && pr_mode != "vsa" &&
          pr_mode != "all") {
        throw ConfigError("mode must be pairwise, seqslam, vsa or all");
      }
      const auto kind = parse_kind(pr_opts.kind_name);
      VsaConfig cfg;
      cfg.kind = kind;
      cfg.dim = is_sparse_binary(kind) ? 2 * pr_dim : pr_dim;
      cfg.seed = pr_opts.seed;
      cfg.density = pr_opts.density;
      cfg.validate();
      const auto raw_db = placerec::load_descriptors(pr_db);
      const auto raw_q = placerec::load_descriptors(pr_query);
      const auto gt = placerec::load_gt_csv(pr_gt);
      if (gt.rows != raw_db.rows || gt.cols != raw_q.rows) {
        throw DataError("ground-truth shape does not match db x query");
      }
      SeededRng proj_rng(pr_opts.seed, {0x9e07ULL});
      const auto projection =
          placerec::make_projection(raw_db.cols, pr_dim, proj_rng);
      const auto db_enc = placerec::encode_for_space(
          placerec::project(placerec::standardize(raw_db), projection, pr_dim),
          cfg);
      const auto q_enc = placerec::encode_for_space(
          placerec::project(placerec::standardize(raw_q), projection, pr_dim),
          cfg);
      const auto pairwise =
          placerec::pairwise_similarity(cfg, db_enc, q_enc);
      auto os = detail::open_out(pr_opts.out);
      os << "mode,kind,auc\n";
      if (pr_mode == "pairwise" || pr_mode == "all") {
        os << "pairwise," << kind_name(kind) << ','
           << detail::fmt(placerec::pr_auc(pairwise, gt)) << '\n';
      }
      if (pr_mode == "seqslam" || pr_mode == "all") {
        os << "seqslam," << kind_name(kind) << ','
           << detail::fmt(placerec::pr_auc(
                  placerec::seqslam_filter(pairwise, pr_seqlen), gt))
           << '\n';
      }
      if (pr_mode == "vsa" || pr_mode == "all") {
        const auto db_seq =
            placerec::vsa_sequence_encode(cfg, db_enc, pr_seqlen);
        const auto q_seq =
            placerec::vsa_sequence_encode(cfg, q_enc, pr_seqlen);
        os << "vsa," << kind_name(kind) << ','
           << detail::fmt(placerec::pr_auc(
                  placerec::pairwise_similarity(cfg, db_seq, q_seq), gt))
           << '\n';
      }
      if (!pr_dump.empty()) {
        auto ds = detail::open_out(pr_dump);
        for (std::uint32_t i = 0; i < pairwise.rows; ++i) {
          for (std::uint32_t j = 0; j < pairwise.cols; ++j) {
            if (j) ds << ',';
            ds << detail::fmt(pairwise.at(i, j));
          }
          ds << '\n';
        }
      }
      RunManifest manifest;
      manifest.subcommand = "placerec";
      manifest.argv = {"placerec", "--db",    pr_db,
                       "--query",  pr_query,  "--gt",
                       pr_gt,      "--kind",  pr_opts.kind_name,
                       "--dim",    std::to_string(pr_dim),
                       "--seqlen", std::to_string(pr_seqlen),
                       "--mode",   pr_mode,
                       "--seed",   std::to_string(pr_opts.seed),
                       "--out",    pr_opts.out};
      if (!pr_dump.empty()) {
        manifest.argv.push_back("--dump-similarity");
        manifest.argv.push_back(pr_dump);
      }
      manifest.config = {{"db", pr_db},     {"query", pr_query},
                         {"gt", pr_gt},     {"kind", pr_opts.kind_name},
                         {"dim", pr_dim},   {"seqlen", pr_seqlen},
                         {"mode", pr_mode}, {"seed", pr_opts.seed}};
      manifest.outputs = {pr_opts.out};
      if (!pr_dump.empty()) manifest.outputs.push_back(pr_dump);
      manifest.seed = pr_opts.seed;
      detail::finish_run(manifest, start);
      return 0;
    }
    if (selftest->parsed()) {
      int failures = 0;
      auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << '\n';
        failures += !ok;
      };
      for (VsaKind k : kAllKinds) {
        if (k == VsaKind::BsdcCdt) continue;
        auto cfg = VsaConfig::make(k, 1024, 7);
        SeededRng rng(1, {std::uint64_t(k)});
        const auto a = random_vector(cfg, rng);
        const auto b = random_vector(cfg, rng);
        const double chance = k == VsaKind::Bsc ? 0.5 : 0.0;
        check("quasi-orthogonal binding: " + std::string(kind_name(k)),
              std::abs(similarity(cfg, bind(cfg, a, b), a) - chance) < 0.25);
        if (binding_traits(k).exact_inverse) {
          const auto rec = unbind(cfg, a, bind(cfg, a, b));
          check("exact inverse: " + std::string(kind_name(k)),
                similarity(cfg, rec, b) > 1.0 - 1e-9);
        }
      }
      {
        auto cfg = VsaConfig::make(VsaKind::Hrr, 128, 3);
        SeededRng rng(5);
        const auto a = random_vector(cfg, rng);
        const auto b = random_vector(cfg, rng);
        const auto fast = bind_circular_convolution(a, b);
        double worst = 0.0;
        const auto& av = a.as<DenseReal>().v;
        const auto& bv = b.as<DenseReal>().v;
        for (std::uint32_t j = 0; j < 128; ++j) {
          double acc = 0.0;
          for (std::uint32_t kk = 0; kk < 128; ++kk) {
            acc += bv[kk] * av[(j + 128 - kk) % 128];
          }
          worst = std::max(worst, std::abs(acc - fast.as<DenseReal>().v[j]));
        }
        check("fft convolution matches the naive loop", worst < 1e-9);
      }
      std::cout << (failures == 0 ? "selftest passed\n"
                                  : "selftest FAILED\n");
      return failures == 0 ? 0 : 1;
    }
    if (replay->parsed()) {
      const auto manifest = RunManifest::load(replay_path);
      std::vector<std::string> args_storage = manifest.argv;
      std::vector<const char*> args;
      args.push_back(kToolName);
      for (const auto& a : args_storage) args.push_back(a.c_str());
      return run(int(args.size()), args.data());
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOperationError& e) {
    std::cerr << "unsupported operation: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const EncodingError& e) {
    std::cerr << "encoding error: " << e.what() << '\n';
    return 3;
  } catch (const StateError& e) {
    std::cerr << "state error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run(int argc, char** argv) {
  return run(argc, const_cast<const char* const*>(argv));
}

}  // namespace hdc::cli
