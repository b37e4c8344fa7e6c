#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ginoe {

struct CriterionResult {
  int number = 0;
  std::string id;
  std::string title;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;            // caps n at 64
  std::string only;              // run a single criterion by id; empty runs all
  std::uint64_t seed = 20240917;  // Monte Carlo seed
  std::function<void(const CriterionResult&)> on_result;  // called as each criterion finishes
};

std::vector<std::string> criterion_ids();

// Throws UsageError for an unknown id. A criterion that throws is reported as failed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

std::string format_result_line(const CriterionResult& r);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ginoe
