#pragma once

#include <stdexcept>
#include <string>

namespace mltc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of the algebra layer (inverting zero, mixing ring sizes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Rejected (n, k, d, mode, ...) combination.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A generator could not be constructed (field too small, failed sub-matrix check).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Coupling-coefficient search ran out of attempts.
class SelectionError : public Error {
 public:
  using Error::Error;
};

// A repair plan does not fit the code or the supplied reads.
class PlanError : public Error {
 public:
  using Error::Error;
};

// A decode hit a singular system.
class MdsViolation : public Error {
 public:
  using Error::Error;
};

// Stored data or inputs disagree with each other (checksums, plan mismatch).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Fewer shards available than a decode or repair needs.
class InsufficientShards : public Error {
 public:
  using Error::Error;
};

}  // namespace mltc
