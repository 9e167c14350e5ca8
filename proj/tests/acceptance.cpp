// Runs every acceptance criterion once and prints one PASS/FAIL line each.
#include "symrigid/verify.hpp"

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

constexpr double kTol = 1e-9;
constexpr std::uint64_t kSeed = 1;

struct Criterion {
  int number;
  const char* suite;
  int trials;          // 0 = suite default
  int min_cases;       // the suite must actually exercise at least this many cases
  double max_seconds;  // 0 = unbounded
};

// Minimum counts: 100 trials; 100 per variant; 20 per pairing row; at least
// 10 curated graphs; at least 25 instances per point-line family; 50 per
// double-cover row.
const std::vector<Criterion> kCriteria = {
    {1, "inversion", 100, 100, 5.0},
    {2, "transfer", 100, 100, 0.0},
    {3, "forced-transfer", 100, 100, 0.0},
    {4, "orbit", 100, 200, 0.0},
    {5, "pairing", 20, 20 * 17, 0.0},
    {6, "combinatorial", 0, 1, 0.0},
    {7, "isostatic", 0, 10, 0.0},
    {8, "pointline", 0, 50, 0.0},
    {9, "doublecover", 50, 50, 0.0},
    {10, "epsilon", 0, 100, 0.0},
    {11, "fixture", 0, 1, 0.0},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    symrigid::SuiteOptions opt;
    opt.trials = c.trials;
    opt.seed = kSeed;
    opt.tol = kTol;
    std::string line;
    bool pass = false;
    try {
      const symrigid::SuiteResult r = symrigid::run_suite(c.suite, opt);
      pass = r.ok() && r.cases >= c.min_cases && (c.max_seconds <= 0.0 || r.seconds < c.max_seconds);
      char buf[256];
      std::snprintf(buf, sizeof buf, "%d/%d cases, %.2f s, tol %.0e", r.cases - r.failures, r.cases, r.seconds,
                    kTol);
      line = buf;
      if (r.cases < c.min_cases) line += ", below the required " + std::to_string(c.min_cases) + " cases";
      if (c.max_seconds > 0.0 && r.seconds >= c.max_seconds) line += ", over the time limit";
      if (!r.summary.empty()) line += " (" + r.summary + ")";
      for (const std::string& m : r.messages) line += "\n    " + m;
    } catch (const std::exception& e) {
      line = std::string("error: ") + e.what();
    }
    std::printf("[%s] criterion %2d %-16s %s\n", pass ? "PASS" : "FAIL", c.number, c.suite, line.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", kCriteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
