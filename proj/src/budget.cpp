#include "polycalc/budget.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "polycalc/error.hpp"

namespace polycalc {
namespace {

std::uint64_t env_default() {
  static const std::uint64_t value = [] {
    const char* env = std::getenv("POLYCALC_BUDGET");
    if (env == nullptr || *env == '\0') return Budget::kDefault;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') return Budget::kDefault;
    return static_cast<std::uint64_t>(v);
  }();
  return value;
}

thread_local std::uint64_t tl_limit = 0;
thread_local bool tl_set = false;

}  // namespace

std::uint64_t Budget::current() { return tl_set ? tl_limit : env_default(); }

void Budget::charge(std::uint64_t candidates, std::string_view what) {
  const std::uint64_t cap = current();
  if (candidates > cap) {
    throw BudgetExceeded(std::string(what) + " needs " +
                         (candidates == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("more than 2^64")
                              : std::to_string(candidates)) +
                         " candidates, budget is " + std::to_string(cap));
  }
}

ScopedBudget::ScopedBudget(std::uint64_t limit) : saved_limit_(tl_limit), saved_set_(tl_set) {
  tl_limit = limit;
  tl_set = true;
}

ScopedBudget::~ScopedBudget() {
  tl_limit = saved_limit_;
  tl_set = saved_set_;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == 0 || r == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return r;
}

}  // namespace polycalc
