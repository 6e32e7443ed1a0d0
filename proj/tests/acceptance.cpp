#include <chrono>
#include <cstdio>
#include <exception>

#include "sixff/suites.hpp"

int main() {
  int failures = 0;
  for (int n = 1; n <= 10; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    sixff::CheckRecord r;
    try {
      r = sixff::acceptance_criterion(n);
    } catch (const std::exception& e) {
      r.pass = false;
      r.counterexample = e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s (%.1fs) %s\n", n, r.pass && !r.skipped ? "PASS" : "FAIL", s, r.witness.c_str());
    if (!r.pass || r.skipped) std::printf("  counterexample: %s\n", r.counterexample.c_str());
    std::fflush(stdout);
    failures += !r.pass || r.skipped;
  }
  return failures == 0 ? 0 : 1;
}
