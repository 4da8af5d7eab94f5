#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nsb {

/// Raised when a caller hands in parameters outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time integration produced a non-finite value.
///
/// `time` is the (dimensionless) time at which the non-finite state was
/// detected. `mode` carries the wavenumber of the dominant Fourier mode when
/// the caller had spectral diagnostics enabled.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, std::optional<double> mode = std::nullopt)
      : std::runtime_error(describe(time, mode)), time_(time), mode_(mode) {}

  double time() const noexcept { return time_; }
  std::optional<double> mode() const noexcept { return mode_; }

 private:
  static std::string describe(double time, std::optional<double> mode) {
    std::ostringstream os;
    os << "numerical blow-up at t=" << time;
    if (mode) os << " (dominant mode k=" << *mode << ")";
    return os.str();
  }

  double time_;
  std::optional<double> mode_;
};

}  // namespace nsb
