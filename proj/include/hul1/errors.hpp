#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace hul1 {

enum class ErrorCode {
  Parse,              // malformed JSON/CSV input
  NonConvergence,     // root iteration failed after all restarts
  IllConditioned,     // partial-fraction recombination error too large
  NotARoot,           // synthetic division remainder too large
  NotIntegrable,      // term fails the L1 integrability invariant
  UnsupportedSupport, // closed-form transform asked for a non-half-line term
  NonFinite,          // sample produced inf/nan
  GridMismatch,       // sampled operands on different grids
  NotHyperbolic,      // characteristic root too close to the imaginary axis
  ExcessJumps,        // candidate too rough for order-n verification
  Invalid,            // bad argument / precondition violation
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception. NotHyperbolic and NotARoot carry a witness value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Error(ErrorCode code, const std::string& msg, std::complex<double> witness)
      : std::runtime_error(msg), code_(code), witness_(witness) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::complex<double>>& witness() const noexcept {
    return witness_;
  }

 private:
  ErrorCode code_;
  std::optional<std::complex<double>> witness_;
};

}  // namespace hul1
