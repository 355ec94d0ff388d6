#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "polycalc/finset.hpp"

namespace testing_helpers {

using polycalc::FinFn;
using polycalc::FinSet;

inline FinFn fn(std::size_t n, std::size_t m, std::vector<std::size_t> table) {
  return FinFn(FinSet::range(n), FinSet::range(m), std::move(table));
}

/// Every function {0..n-1} → {0..m-1}, by odometer; independent of all_functions.
inline std::vector<std::vector<std::size_t>> tables(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> t(n, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = n;
    while (i > 0 && ++t[i - 1] == m) t[--i] = 0;
    if (i == 0) return out;
  }
}

inline FinFn random_fn(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(n);
  for (auto& x : t) x = rng() % m;
  return fn(n, m, t);
}

}  // namespace testing_helpers
