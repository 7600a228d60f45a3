#pragma once

// Cross-module empirical checks behind `hyperdisc verify` and the acceptance
// test. Each check returns a report entry; none of them throws on failure.

#include <cstdint>
#include <string>
#include <vector>

namespace hyperdisc {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured statistics, human readable
  double seconds = 0.0;
};

enum class Scale { smoke, full };
Scale parse_scale(const std::string& s);

struct VerifyReport {
  std::uint64_t seed = 0;
  Scale scale = Scale::smoke;
  std::vector<CheckResult> checks;
  bool all_passed() const;
  // One JSON object; `with_timing` = false drops the seconds fields so the
  // output is reproducible byte for byte.
  std::string to_json(bool with_timing) const;
};

CheckResult check_oracle_equivalence(std::uint64_t seed, Scale scale);      // 1
CheckResult check_partial_colouring(std::uint64_t seed, Scale scale);       // 2
CheckResult check_iterated_envelope(std::uint64_t seed, Scale scale);       // 3
CheckResult check_interval_bounds(std::uint64_t seed, Scale scale);         // 4
CheckResult check_parity(std::uint64_t seed, Scale scale);                  // 5
CheckResult check_hypergeometric(std::uint64_t seed, Scale scale);          // 6
CheckResult check_typical_histories(std::uint64_t seed, Scale scale);       // 7
CheckResult check_phase_transition(std::uint64_t seed, Scale scale);        // 8
CheckResult check_first_moment(std::uint64_t seed, Scale scale);            // 9

VerifyReport verify_suite(std::uint64_t seed, Scale scale);

}  // namespace hyperdisc
