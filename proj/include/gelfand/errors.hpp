#ifndef GELFAND_ERRORS_HPP
#define GELFAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gelfand {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic outside the domain of an operation (inverting zero, dlog(0),
/// inverting a singular matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-conformal matrix dimensions or index-set sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: non-prime characteristic, reducible modulus,
/// trivial additive twist, malformed CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its declared size cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An element was expected to lie in a subgroup and does not.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// A matrix does not have the block shape an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace gelfand

#endif  // GELFAND_ERRORS_HPP
