#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace steinhaus::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_ok = false;
  bool pass = false;  // checks_ok and within the time budget
  double seconds = 0;
  double budget = 0;
  std::vector<std::string> lines;  // per-check detail
};

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty: all criteria
};

int criterion_count();
std::string criterion_name(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace steinhaus::suite
