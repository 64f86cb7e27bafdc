#include <cstdio>
#include <cstdlib>
#include <string>

#include "verify_suite.hpp"

// Usage: steinhaus_acceptance [criterion-id ...]; prints one PASS/FAIL line per criterion.
int main(int argc, char** argv) {
  steinhaus::suite::SuiteOptions opt;
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  bool all = true;
  steinhaus::suite::run_suite(opt, [&](const steinhaus::suite::CriterionResult& r) {
    std::printf("%s criterion %d: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    for (const auto& l : r.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
