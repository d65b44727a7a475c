#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shapeforce {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic numbers only, no wall-clock timings
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  std::string canonical_json;  // byte-stable under a fixed seed
  double elapsed_s = 0.0;

  bool all_pass() const {
    for (const CriterionResult& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs the full acceptance suite. The deterministic portion executes twice
/// to check byte-identical reporting, and the total runtime is held against
/// the 60-second budget.
AcceptanceReport run_acceptance(std::uint64_t seed);

std::string format_acceptance_table(const AcceptanceReport& report);

}  // namespace shapeforce
