// Times the law harness serially and under OpenMP on the same corpus and
// checks that both produce the same report.
//
//   harness_bench [--suites a,b] [--seed N] [--repeat N]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "polycalc/harness.hpp"

using namespace polycalc::harness;

namespace {

double time_run(const std::vector<Case>& cases, const Config& cfg, Mode mode, std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = report(run(cases, cfg, mode), cfg);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  int repeat = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--suites")) {
      std::stringstream in(argv[i + 1]);
      for (std::string s; std::getline(in, s, ',');) cfg.suites.push_back(s);
    } else if (!std::strcmp(argv[i], "--seed")) {
      cfg.seed = std::stoull(argv[i + 1]);
    } else if (!std::strcmp(argv[i], "--repeat")) {
      repeat = std::max(1, std::stoi(argv[i + 1]));
    } else {
      std::fprintf(stderr, "usage: harness_bench [--suites a,b] [--seed N] [--repeat N]\n");
      return 2;
    }
  }
  const auto cases = build_corpus(cfg);
  std::vector<double> serial, parallel;
  std::string reference, other;
  bool identical = true;
  for (int r = 0; r < repeat; ++r) {
    serial.push_back(time_run(cases, cfg, Mode::Serial, reference));
    parallel.push_back(time_run(cases, cfg, Mode::Parallel, other));
    identical = identical && reference == other;
  }
  std::sort(serial.begin(), serial.end());
  std::sort(parallel.begin(), parallel.end());
  const double s = serial[serial.size() / 2], p = parallel[parallel.size() / 2];
  std::printf("cases %zu, threads %d, repeats %d\n", cases.size(), omp_get_max_threads(), repeat);
  std::printf("serial   median %.3fs (min %.3fs)\n", s, serial.front());
  std::printf("parallel median %.3fs (min %.3fs)\n", p, parallel.front());
  std::printf("speedup  %.2fx\n", p > 0 ? s / p : 0.0);
  std::printf("reports  %s\n", identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
