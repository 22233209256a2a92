#pragma once

#include <stdexcept>
#include <string>

namespace liedirac {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: singular matrix, non-finite value in an integrand,
/// divergent averaging, spectrum on the logarithm cut, ill-conditioned
/// eigenvalue clusters.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

/// A value outside the operation's domain: non-member matrix, unsupported
/// group name, invalid configuration field.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace liedirac
