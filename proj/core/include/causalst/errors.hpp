#pragma once

#include <stdexcept>
#include <string>

namespace causalst {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A node name or id that does not belong to the structure at hand.
struct UnknownNodeError : Error {
  using Error::Error;
};

/// Ill-formed query arguments (overlapping sets, empty required sets,
/// values outside an alphabet, mixed spaces, ...).
struct QueryError : Error {
  using Error::Error;
};

/// A structure, model, distribution or embedding failed its invariants.
struct InvariantError : Error {
  using Error::Error;
};

/// An enumeration would exceed the configured state-space or model cap.
struct BoundExceededError : Error {
  using Error::Error;
};

/// Conditioning on an event of probability zero: the conditional is
/// undefined and the caller has to decide what that means.
struct ZeroProbabilityError : Error {
  using Error::Error;
};

/// Scenario/behaviour config files that do not parse or do not validate.
/// `where` carries a JSON-pointer-ish path to the offending field.
struct ConfigError : Error {
  ConfigError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where(where) {}
  std::string where;
};

}  // namespace causalst
