// One line per acceptance criterion, computed from the law harness at seed 0
// with bounds (3, 3). Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "polycalc/harness.hpp"

using namespace polycalc::harness;

namespace {

struct Tally {
  std::size_t pass = 0, fail = 0, skipped = 0;
  std::string first_failure;
};

std::map<std::string, Tally> by_group(const std::vector<Record>& records) {
  std::map<std::string, Tally> out;
  for (const Record& r : records) {
    const std::string group = r.id.substr(0, r.id.rfind('/'));
    Tally& t = out[group];
    if (r.status == Status::Pass) ++t.pass;
    if (r.status == Status::SkippedBudget) ++t.skipped;
    if (r.status == Status::Fail) {
      ++t.fail;
      if (t.first_failure.empty()) t.first_failure = r.id + ": " + r.witness.value("law", "") + ": " + r.witness.value("detail", "");
    }
  }
  return out;
}

struct Requirement {
  std::string group;        ///< suite/group, or a suite name to cover all its groups
  std::size_t min_pass = 1; ///< passing cases required, with no failures or skips
};

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome evaluate(const std::map<std::string, Tally>& groups, const std::vector<Requirement>& reqs) {
  Outcome o;
  for (const Requirement& req : reqs) {
    Tally t;
    bool found = false;
    for (const auto& [g, tally] : groups) {
      if (g != req.group && g.rfind(req.group + "/", 0) != 0) continue;
      found = true;
      t.pass += tally.pass;
      t.fail += tally.fail;
      t.skipped += tally.skipped;
      if (t.first_failure.empty()) t.first_failure = tally.first_failure;
    }
    const bool ok = found && t.fail == 0 && t.skipped == 0 && t.pass >= req.min_pass;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += req.group + " " + std::to_string(t.pass) + " pass";
    if (t.fail) o.detail += ", " + std::to_string(t.fail) + " fail (" + t.first_failure + ")";
    if (t.skipped) o.detail += ", " + std::to_string(t.skipped) + " skipped";
    if (req.min_pass > 1) o.detail += " (need " + std::to_string(req.min_pass) + ")";
    o.ok = o.ok && ok;
  }
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  Config cfg;  // seed 0, bounds (3, 3), default budget, every suite
  const auto cases = build_corpus(cfg);

  auto t0 = std::chrono::steady_clock::now();
  const auto first = run(cases, cfg, Mode::Parallel);
  const double parallel_s = seconds_since(t0);
  const std::string report_a = report(first, cfg);
  const std::string report_b = report(run(build_corpus(cfg), cfg, Mode::Parallel), cfg);
  t0 = std::chrono::steady_clock::now();
  const std::string report_serial = report(run(cases, cfg, Mode::Serial), cfg);
  const double serial_s = seconds_since(t0);

  const auto groups = by_group(first);
  struct Criterion {
    int id;
    const char* name;
    std::vector<Requirement> reqs;
  };
  const std::vector<Criterion> criteria{
      {1, "functor oracle P(p◁q) ≅ P(p)∘P(q), |X| ≤ 3", {{"monoidal/functor", 200}}},
      {2, "◁ unitors, associator, triangle, pentagon; ⊗ braiding, unitors, associator, hexagon",
       {{"monoidal/triple", 100}}},
      {3, "closure adjunction on full hom-sets and triangle identities",
       {{"closure/adjunction", 216}, {"closure/triangle", 36}}},
      {4, "right coclosure and indexed left coclosure on full hom-sets, partitioned by f",
       {{"coclosure/adjunction", 216}}},
      {5, "duoidal interchange: cartesian, Set description, naturality, coherence", {{"duoidal/quadruple", 50}}},
      {6, "comonoid ↔ category round trip and law equivalence",
       {{"comonoid/category", 50}, {"comonoid/law-equivalence", 1}, {"comonoid/canonical", 1}}},
      {7, "cofunctor equations = comonoid homomorphism equations", {{"comonoid/cofunctor", 4}}},
      {8, "coalgebra ↔ copresheaf ↔ opfibration, total size ≤ 3, hom-set bijections",
       {{"coalgebra/exhaustive", 4}, {"coalgebra/homsets", 1}, {"coalgebra/random", 1}}},
      {9, "bicomodule composite ≅ typed composite, unit laws",
       {{"typed/compose", 30}, {"typed/assoc", 1}, {"bicomodule", 1}}},
      {10, "migration: Yoneda, Σ Hom formula, pullback preservation",
       {{"migrate/yoneda", 10}, {"migrate/formula", 1}, {"migrate/pullback", 1}, {"migrate/identity", 1}}},
      {11, "presheaf bases: Π hom-set adjunction, ◁ unit and associativity", {{"presheaf/pi-walking-arrow", 1},
        {"presheaf/pi-parallel-pair", 1},
        {"presheaf/unit-assoc-walking-arrow", 1},
        {"presheaf/unit-assoc-parallel-pair", 1},
        {"presheaf/finset-pi", 1}}},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    const Outcome o = evaluate(groups, c.reqs);
    all = all && o.ok;
    std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
  }
  const bool same_runs = report_a == report_b;
  const bool same_modes = report_a == report_serial;
  const Summary s = summarize(first);
  std::printf("[%s] 12 determinism: two seed-0 runs %s (%zu bytes, corpus %s); serial run %s; %zu cases in %.1fs parallel, %.1fs serial\n",
              same_runs && same_modes ? "PASS" : "FAIL", same_runs ? "byte-identical" : "DIFFER", report_a.size(),
              hex(s.corpus_digest).c_str(), same_modes ? "identical" : "DIFFERS", first.size(), parallel_s, serial_s);
  all = all && same_runs && same_modes;
  return all ? 0 : 1;
}
