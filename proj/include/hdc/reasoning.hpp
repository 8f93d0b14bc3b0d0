#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hdc/algebra.hpp"
#include "hdc/item_memory.hpp"

namespace hdc {

// A bundled set of role-filler pairs; the pairs are kept for verification.
struct Record {
  std::vector<std::pair<Hypervector, Hypervector>> pairs;  // (role, filler)
  Hypervector vector;
};

inline Record build_record(
    const VsaConfig& cfg,
    std::vector<std::pair<Hypervector, Hypervector>> pairs, SeededRng& rng) {
  if (pairs.empty()) throw ArgumentError("build_record: no role-filler pairs");
  std::vector<Hypervector> bound;
  bound.reserve(pairs.size());
  for (const auto& [role, filler] : pairs) {
    bound.push_back(bind(cfg, role, filler));
  }
  Record rec{std::move(pairs), bundle(cfg, bound, rng)};
  return rec;
}

// Recovers the filler of a record pair given its role. Records bind
// role-first, so for VTB (whose unbind keys on the second operand) the
// composite is operand-swapped before the transpose unbind.
inline Hypervector unbind_filler_given_role(const VsaConfig& cfg,
                                            const Hypervector& role,
                                            const Hypervector& composite) {
  if (cfg.kind == VsaKind::Vtb) {
    return unbind_vtb(role, vtb_swap_operands(composite));
  }
  return unbind(cfg, role, composite);
}

// Recovers the role of a record pair given its filler. Undefined for MBAT
// and BSDC-S, whose bindings keep only a hash of the role; callers scan the
// role memory instead (see query_two_step).
inline Hypervector unbind_role_given_filler(const VsaConfig& cfg,
                                            const Hypervector& filler,
                                            const Hypervector& composite) {
  switch (cfg.kind) {
    case VsaKind::Mbat:
    case VsaKind::BsdcS:
      throw UnsupportedOperationError(
          std::string(kind_name(cfg.kind)) +
          " binding retains only a hash of the role; recover roles by "
          "scanning a role memory");
    case VsaKind::Vtb:
      return unbind_vtb(filler, composite);  // natural direction
    default:
      return unbind(cfg, filler, composite);
  }
}

// One-step analogical mapping: probe (x) (A (x) B). Only self-inverse
// bindings cancel the role terms, so other kinds are rejected.
inline Hypervector query_self_inverse(const VsaConfig& cfg,
                                      const Record& record_a,
                                      const Record& record_b,
                                      const Hypervector& probe) {
  if (!is_self_inverse(cfg.kind)) {
    throw UnsupportedOperationError(
        std::string(kind_name(cfg.kind)) +
        " binding is not self-inverse; use the two-step unbinding path "
        "(query_two_step) instead");
  }
  const auto mapping = bind(cfg, record_a.vector, record_b.vector);
  return bind(cfg, probe, mapping);
}

struct TwoStepOptions {
  bool cleanup_intermediate = true;  // clean the recovered role first
};

// Two-step path: unbind the probe from record A to expose its role, then
// unbind that role from record B. The intermediate role is cleaned against
// role_memory by default; for the hash-keyed bindings (MBAT, BSDC-S) the
// role is instead selected as the role-memory entry whose unbinding of
// record A best matches the probe.
inline Hypervector query_two_step(const VsaConfig& cfg, const Record& record_a,
                                  const Record& record_b,
                                  const Hypervector& probe,
                                  const ItemMemory& role_memory,
                                  const TwoStepOptions& opts = {}) {
  if (cfg.kind == VsaKind::BsdcCdt) {
    throw UnsupportedOperationError("BSDC-CDT has no unbinding operator");
  }
  Hypervector role;
  if (cfg.kind == VsaKind::Mbat || cfg.kind == VsaKind::BsdcS) {
    if (role_memory.size() == 0) {
      throw StateError("two-step query needs a role memory for this kind");
    }
    double best = -2.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < role_memory.size(); ++i) {
      const auto candidate =
          unbind_filler_given_role(cfg, role_memory.vector(i), record_a.vector);
      const double s = similarity(cfg, candidate, probe);
      if (s > best) {
        best = s;
        best_idx = i;
      }
    }
    role = role_memory.vector(best_idx);
  } else {
    role = unbind_role_given_filler(cfg, probe, record_a.vector);
    if (opts.cleanup_intermediate && role_memory.size() > 0) {
      role = role_memory.vector(role_memory.cleanup(role).index);
    }
  }
  return unbind_filler_given_role(cfg, role, record_b.vector);
}

// ---------------------------------------------------------------------------
// "Dollar of Mexico" demo fixture and driver
// ---------------------------------------------------------------------------

enum class ReasoningPath { Auto, OneStep, TwoStep };

inline ReasoningPath parse_reasoning_path(const std::string& s) {
  if (s == "auto") return ReasoningPath::Auto;
  if (s == "one-step") return ReasoningPath::OneStep;
  if (s == "two-step") return ReasoningPath::TwoStep;
  throw ConfigError("unknown path '" + s + "' (auto, one-step, two-step)");
}

struct DollarTrial {
  std::uint32_t trial = 0;
  std::string path;    // "one-step" or "two-step"
  std::string answer;  // top-1 label
  double score = 0.0;
  bool correct = false;
};

struct DollarReport {
  std::vector<DollarTrial> trials;
  double accuracy = 0.0;
};

// Two records x three role-filler pairs (Name/Curr/Cap), queried with the
// Dollar probe; the expected answer is Peso. The item memory holds the nine
// named atoms plus `distractors` random entries.
inline DollarReport run_dollar_of_mexico(const VsaConfig& cfg,
                                         std::uint32_t trials,
                                         ReasoningPath path = ReasoningPath::Auto,
                                         std::uint32_t distractors = 97) {
  cfg.validate();
  // Explicitly requesting one-step on a non-self-inverse kind is allowed to
  // reach query_self_inverse, which raises the documented error.
  const bool one_step = path == ReasoningPath::OneStep ||
                        (path == ReasoningPath::Auto &&
                         is_self_inverse(cfg.kind));
  static constexpr const char* kAtoms[] = {"Name", "Curr", "Cap",
                                           "USA",  "Dol",  "WDC",
                                           "Mex",  "Peso", "MXC"};
  DollarReport report;
  report.trials.reserve(trials);
  std::uint32_t correct = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    ItemMemory memory(cfg);
    std::vector<Hypervector> atoms;
    for (std::uint32_t i = 0; i < 9; ++i) {
      SeededRng rng(cfg.seed, {0xD011A5ULL, t, i});
      atoms.push_back(random_vector(cfg, rng));
      memory.add(kAtoms[i], atoms.back());
    }
    for (std::uint32_t i = 0; i < distractors; ++i) {
      SeededRng rng(cfg.seed, {0xD157ULL, t, i});
      memory.add("dist_" + std::to_string(i), random_vector(cfg, rng));
    }
    ItemMemory roles(cfg);
    for (std::uint32_t i = 0; i < 3; ++i) roles.add(kAtoms[i], atoms[i]);

    SeededRng tie_a(cfg.seed, {0xB0ULL, t, 0});
    SeededRng tie_b(cfg.seed, {0xB0ULL, t, 1});
    const auto r_usa = build_record(
        cfg, {{atoms[0], atoms[3]}, {atoms[1], atoms[4]}, {atoms[2], atoms[5]}},
        tie_a);
    const auto r_mex = build_record(
        cfg, {{atoms[0], atoms[6]}, {atoms[1], atoms[7]}, {atoms[2], atoms[8]}},
        tie_b);

    const auto answer_vec =
        one_step ? query_self_inverse(cfg, r_usa, r_mex, atoms[4])
                 : query_two_step(cfg, r_usa, r_mex, atoms[4], roles);
    const auto hit = memory.cleanup(answer_vec);
    DollarTrial row;
    row.trial = t;
    row.path = one_step ? "one-step" : "two-step";
    row.answer = hit.label;
    row.score = hit.score;
    row.correct = hit.label == "Peso";
    correct += row.correct;
    report.trials.push_back(std::move(row));
  }
  report.accuracy = trials == 0 ? 0.0 : double(correct) / double(trials);
  return report;
}

}  // namespace hdc
