#pragma once

#include <string>
#include <vector>

namespace polycalc {

/// A failed law instance and a human-readable counterexample.
struct Violation {
  std::string law;
  std::string witness;
};

/// Outcome of a validation: empty means every checked law held.
class Verdict {
 public:
  bool ok() const { return violations_.empty(); }
  void fail(std::string law, std::string witness) {
    violations_.push_back({std::move(law), std::move(witness)});
  }
  void merge(const Verdict& other, const std::string& prefix = {}) {
    for (const Violation& v : other.violations_) violations_.push_back({prefix + v.law, v.witness});
  }
  const std::vector<Violation>& violations() const { return violations_; }
  /// "ok" or "law: witness" for the first violation.
  std::string summary() const {
    if (ok()) return "ok";
    return violations_.front().law + ": " + violations_.front().witness;
  }

 private:
  std::vector<Violation> violations_;
};

}  // namespace polycalc
