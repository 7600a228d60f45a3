#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hyperdisc {

// Every recoverable failure in the library is an Error carrying a short
// machine-readable code. The CLI turns these into `{"error": code, ...}`.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* kIndexOutOfRange = "index_out_of_range";
inline constexpr const char* kLengthMismatch = "length_mismatch";
inline constexpr const char* kInvalidParameter = "invalid_parameter";
inline constexpr const char* kInstanceTooLarge = "instance_too_large";
inline constexpr const char* kBudgetInfeasible = "budget_infeasible";
inline constexpr const char* kWalkFailed = "walk_failed";
inline constexpr const char* kRoundAborted = "round_aborted";
inline constexpr const char* kDenseRegimeRequired = "dense_regime_required";
inline constexpr const char* kScheduleUndefined = "schedule_undefined";
inline constexpr const char* kIo = "io_error";
inline constexpr const char* kParse = "parse_error";
inline constexpr const char* kTimeout = "timeout";
}  // namespace errc

}  // namespace hyperdisc
