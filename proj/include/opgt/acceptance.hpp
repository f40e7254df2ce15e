#pragma once

// The acceptance battery: eleven numbered checks, each run on seeded
// random instances, plus reproducibility of the whole battery (checked by
// the caller, which runs it twice and compares digests).

#include "opgt/json_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace opgt {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // one line, quantitative
  Json data;           // reproducible numbers only
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::function<void(const CriterionResult&)> on_result;
  std::vector<int> only;  // empty runs every criterion
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// FNV-1a digest over the `data` fields and pass flags.
std::string battery_digest(const std::vector<CriterionResult>& results);

}  // namespace opgt
