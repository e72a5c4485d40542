#pragma once

#include <stdexcept>
#include <string>

namespace pathcalc {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad geometry, out-of-range
/// parameter, descriptor that cannot be interpreted, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace pathcalc
