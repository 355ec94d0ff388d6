#pragma once

/// @file harness.hpp
/// Seeded law verification over generated corpora, with line-delimited JSON
/// reports.
///
/// The corpus is a pure function of (seed, bounds): every case draws from its
/// own generator, seeded from the run seed and the case's group and index, so
/// selecting suites or filtering cases never changes another case's inputs.
/// Polynomials are sampled by a uniform position count in [0, maxPositions],
/// then a uniform direction count in [0, maxDirections] per position. Suites
/// that build threefold products clamp both bounds to 2 (see README).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polycalc/budget.hpp"
#include "polycalc/comonoid.hpp"
#include "polycalc/io.hpp"
#include "polycalc/verdict.hpp"

namespace polycalc::harness {

struct Config {
  std::uint64_t seed = 0;
  std::size_t max_positions = 3;
  std::size_t max_directions = 3;
  std::uint64_t budget = Budget::kDefault;
  /// Empty means every suite, in canonical order.
  std::vector<std::string> suites;
  /// Adds the mutant comonoid fixture as case comonoid/mutant/0000.
  bool inject_mutant = false;
  /// Keeps only cases whose id starts with this prefix.
  std::string only;
};

/// monoidal, duoidal, closure, coclosure, comonoid, coalgebra, bicomodule,
/// typed, migrate, presheaf.
const std::vector<std::string>& suite_names();
/// Throws DomainError on a zero budget or an unknown suite name.
void validate(const Config& cfg);

struct Case {
  std::string suite;
  std::string id;  ///< suite/group/NNNN
  io::Json inputs;
  std::function<Verdict()> check;
};
/// The deterministic case list, in canonical order.
std::vector<Case> build_corpus(const Config& cfg);

enum class Status { Pass, Fail, SkippedBudget };
const char* status_name(Status s);

struct Record {
  std::string suite, id;
  Status status = Status::Pass;
  /// On fail: {"case", "seed", "inputs", "law", "detail"}; replay with
  /// `polycalc laws --seed S --only CASE`. On skip: {"detail"}.
  io::Json witness;
  std::uint64_t digest = 0;  ///< FNV-1a of the canonical inputs
};

enum class Mode { Serial, Parallel };
/// Runs every case under its own budget scope. Parallel mode uses OpenMP;
/// records come back in case order either way.
std::vector<Record> run(const std::vector<Case>& cases, const Config& cfg, Mode mode);

struct Summary {
  std::size_t pass = 0, fail = 0, skipped = 0;
  std::uint64_t corpus_digest = 0;  ///< FNV-1a over the case digests in order
};
Summary summarize(const std::vector<Record>& records);

/// One JSON object per line, then a footer with counts, corpus digest and config.
std::string report(const std::vector<Record>& records, const Config& cfg);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 14695981039346656037ULL);
std::string hex(std::uint64_t v);

/// Walking arrow with the targets of id_a and f exchanged in δ₁: a shape-valid
/// candidate that fails the counit and coassociativity laws.
Comonoid mutant_comonoid();

}  // namespace polycalc::harness
