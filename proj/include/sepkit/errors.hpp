#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bounded search or demand ran out of its step budget. Distinct from
// produced data: callers that can make progress without the value catch it.
struct FuelExhausted : Error {
  using Error::Error;
};

// A name violated its representation contract at an inspected position
// (e.g. a Cauchy modulus failure, or a non-binary separator bit).
struct MalformedName : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

// Internal control flow: a machine run demanded input past the fueled
// prefix. Never escapes fueled_run.
struct NeedMoreInput {};

}  // namespace sepkit
