#pragma once

#include <stdexcept>
#include <string>

namespace tdual {

/// Base class for all domain errors raised by the toolkit.  The CLI maps
/// these to exit code 2 (usage / validation), reserving 1 for verification
/// failures.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct IllFormedHom : Error {
  using Error::Error;
};
struct UnknownDescriptor : Error {
  using Error::Error;
};
struct BadParameters : Error {
  using Error::Error;
};
struct DegreeOverflow : Error {
  using Error::Error;
};
struct DegreeOutOfRange : Error {
  using Error::Error;
};
struct ObstructionNonzero : Error {
  using Error::Error;
};
struct BaseMismatch : Error {
  using Error::Error;
};
struct UnsupportedDimension : Error {
  using Error::Error;
};
struct UnsupportedTwist : Error {
  using Error::Error;
};
struct ZeroTwist : Error {
  using Error::Error;
};
struct NotDualizable : Error {
  using Error::Error;
};

}  // namespace tdual
