// errors.hpp
// Exception types shared by every module. The CLI maps them onto exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace bvw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request exceeds a configured cap (table limit, character cap, memory).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree did not. Always a bug, never bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed files, unknown identifiers and similar caller mistakes.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace bvw
