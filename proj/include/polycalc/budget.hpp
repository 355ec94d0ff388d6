#pragma once

#include <cstdint>
#include <string_view>

namespace polycalc {

/// Cap on the number of candidates an enumerating operation may visit.
/// The active cap is thread-local; operations check it before enumerating.
class Budget {
 public:
  static constexpr std::uint64_t kDefault = 1'000'000;

  /// Active cap for this thread (POLYCALC_BUDGET overrides the default).
  static std::uint64_t current();
  /// Throws BudgetExceeded if `candidates` exceeds the active cap.
  static void charge(std::uint64_t candidates, std::string_view what);
};

/// Installs a cap for the lifetime of the scope on the calling thread.
class ScopedBudget {
 public:
  explicit ScopedBudget(std::uint64_t limit);
  ~ScopedBudget();
  ScopedBudget(const ScopedBudget&) = delete;
  ScopedBudget& operator=(const ScopedBudget&) = delete;

 private:
  std::uint64_t saved_limit_;
  bool saved_set_;
};

/// Saturating arithmetic for candidate counts.
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);

}  // namespace polycalc
