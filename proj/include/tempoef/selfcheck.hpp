#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace tempoef {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // failure counts or the first failing case
  double seconds = 0;
};

/// Runs the acceptance checks (exact worked examples, corpus scenarios, and
/// the seeded property suites). `only` empty means all. Each criterion is
/// self-contained; tolerances are boolean (zero failures).
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::set<int>& only = {});

/// One "[PASS]/[FAIL] criterion N: ..." line per result; returns all-pass.
bool print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace tempoef
