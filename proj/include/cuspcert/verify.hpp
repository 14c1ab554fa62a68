#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cuspcert::verify {

inline constexpr std::uint64_t kDefaultSeed = 20260809;

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double observed = 0.0;  // worst measured discrepancy (or value)
  double bound = 0.0;     // the tolerance it must respect
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  bool passed = false;
  nlohmann::json counterexample;  // populated when a check fails
  double elapsed_seconds = 0.0;
};

/// metric | trace | length | heisenberg | horoball
std::vector<std::string> suite_names();

/// Runs one cross-check suite with deterministic fixtures derived from the
/// seed.  Each check pits a closed-form implementation against an
/// independent route (direct multiplication, numerical search, sampling).
SuiteResult run_suite(const std::string& name,
                      std::uint64_t seed = kDefaultSeed, int threads = 0);

nlohmann::json suite_result_to_json(const SuiteResult& result);

}  // namespace cuspcert::verify
