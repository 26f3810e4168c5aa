#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// Failure categories surfaced by the library. Configuration-class codes
/// (bad scenario, wind not unit, dimension mismatch) map to CLI exit 2,
/// everything else signals a runtime evaluation problem.
enum class Err {
  cone_violation,
  dual_cone_violation,
  dimension_mismatch,
  singular_tensor,
  domain_violation,
  not_unit_wind,
  newton_divergence,
  out_of_domain,
  no_conic_normal,
  frame_degenerate,
  not_killing,
  normal_excluded,
  insufficient_samples,
  empty_domain,
  degenerate_flag,
  bad_scenario,
  unsupported,
};

const char* err_name(Err code);

/// True for errors that indicate a misconfigured model/scenario rather than
/// a failed numeric check.
bool is_config_error(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) raise(code, msg);
}

}  // namespace finsler
