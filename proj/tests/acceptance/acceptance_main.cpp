#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "gforge/acceptance.hpp"

// Exit-gate runner. With no arguments it runs every numbered criterion in
// order; with arguments it runs exactly those numbers. One line per
// criterion, exit 0 iff all ran and passed.
int main(int argc, char** argv) {
  using namespace gforge;

  AcceptanceOptions opt;
  if (const char* jobs = std::getenv("GFORGE_JOBS")) {
    int j = std::atoi(jobs);
    if (j > 0) opt.jobs = j;
  }

  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      opt.jobs = std::atoi(argv[++i]);
      continue;
    }
    int n = std::atoi(argv[i]);
    if (n < 1 || n > num_criteria()) {
      std::fprintf(stderr, "unknown criterion '%s' (valid: 1..%d)\n", argv[i], num_criteria());
      return 2;
    }
    wanted.push_back(n);
  }
  if (wanted.empty()) {
    for (int n = 1; n <= num_criteria(); ++n) wanted.push_back(n);
  }

  bool all = true;
  for (int n : wanted) {
    AcceptanceResult r = run_criterion(n, opt);
    std::printf("criterion %d: %s (%.2f s) - %s\n", r.criterion, r.pass ? "PASS" : "FAIL",
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
