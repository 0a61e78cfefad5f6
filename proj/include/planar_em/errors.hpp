#pragma once

#include <stdexcept>
#include <string>

namespace pem {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent layout construction input.
struct GeometryError : Error {
  using Error::Error;
};

// Rasterization failures (under-resolved features, bad grid spec).
struct VoxelError : Error {
  using Error::Error;
};

// Mixed inputs that must come from the same configuration.
struct ContractError : Error {
  using Error::Error;
};

// Non-finite field detected during time stepping.
struct InstabilityError : Error {
  InstabilityError(const std::string& what, long step)
      : Error(what), step(step) {}
  long step;
};

// Estimated memory or step budget exceeded; carries the estimate.
struct ResourceError : Error {
  using Error::Error;
};

// Requested frequency outside the excitation's usable band.
struct OutOfBandError : Error {
  using Error::Error;
};

// ECC denominator vanished at a frequency.
struct SingularEccError : Error {
  SingularEccError(const std::string& what, double freq_hz)
      : Error(what), freq_hz(freq_hz) {}
  double freq_hz;
};

// File format / filesystem problems.
struct IoError : Error {
  using Error::Error;
};

// Bad command-line or config input.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace pem
