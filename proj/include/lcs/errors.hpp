#pragma once

#include <stdexcept>
#include <string>

namespace lcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad variable counts, bad parameters, AD depth.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the real domain of an elementary function or chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation too close to a singular locus (ring, Lee form pole, degenerate
/// metric, Cayley transform at infinity).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Inverse chart cannot choose a branch at this point.
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Forms or maps combined across incompatible charts or degrees.
class FormError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcs
