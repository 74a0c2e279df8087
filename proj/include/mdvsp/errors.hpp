#pragma once

#include <stdexcept>
#include <string>

namespace mdvsp {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance / solution / model text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation received data that breaks a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The relaxation (or a model) has no feasible solution. When the failure can
/// be pinned to a single trip, `witness_trip` holds its node id in G.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what, int witness_trip = -1)
      : Error(what), witness_trip(witness_trip) {}
  int witness_trip;
};

/// A subtour (or the whole assignment) admits no eligible repair.
class RepairError : public Error {
 public:
  using Error::Error;
};

/// External or builtin solver trouble that is not model infeasibility.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// The configured solver executable cannot be run at all.
class BackendUnavailableError : public BackendError {
 public:
  using BackendError::BackendError;
};

/// Cooperative deadline expiry.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdvsp
