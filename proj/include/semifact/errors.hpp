#ifndef SEMIFACT_ERRORS_HPP
#define SEMIFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semifact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph construction.
struct DisconnectedGraph : Error {
  using Error::Error;
};
struct DanglingEndpoint : Error {
  using Error::Error;
};
struct DuplicateId : Error {
  using Error::Error;
};
struct InvalidLabel : Error {
  using Error::Error;
};

// Circuit machinery.
struct CircuitCapExceeded : Error {
  using Error::Error;
};
struct InfiniteLabelPresent : Error {
  using Error::Error;
};
struct UnknownEdge : Error {
  using Error::Error;
};

// Integer linear algebra.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Labellings and descent.
struct NotCartier : Error {
  using Error::Error;
};
struct NotABlowupOf : Error {
  using Error::Error;
};
struct SupportConditionViolated : Error {
  using Error::Error;
};

// File formats.
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace semifact

#endif  // SEMIFACT_ERRORS_HPP
