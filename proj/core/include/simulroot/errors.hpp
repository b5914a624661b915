#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace simulroot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numeral or expression. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An expression mixes linear, sine and hyperbolic-sine factors.
class MixedFamilyError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// The same root appears in two factors of an expression.
class DuplicateRootError : public Error {
 public:
  using Error::Error;
};

/// cot / coth evaluated where sin / sinh vanishes at working precision.
class PoleError : public Error {
 public:
  PoleError(const std::string& fn, std::string argument)
      : Error(fn + " has a pole at x = " + argument), argument_(std::move(argument)) {}

  const std::string& argument() const noexcept { return argument_; }

 private:
  std::string argument_;
};

/// Two estimates coincide; indices are 0-based.
class CollisionError : public Error {
 public:
  CollisionError(std::size_t i, std::size_t j)
      : Error("estimates x" + std::to_string(i + 1) + " and x" + std::to_string(j + 1) +
              " coincide"),
        i_(i),
        j_(j) {}

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

/// p'(x) = 0 while p(x) != 0: the Newton ratio is undefined.
class DerivativeZeroError : public Error {
 public:
  explicit DerivativeZeroError(std::string x, std::optional<std::size_t> root_index = std::nullopt)
      : Error(describe(x, root_index)), x_(std::move(x)), root_index_(root_index) {}

  const std::string& x() const noexcept { return x_; }
  std::optional<std::size_t> root_index() const noexcept { return root_index_; }

  DerivativeZeroError with_index(std::size_t i) const { return DerivativeZeroError(x_, i); }

 private:
  static std::string describe(const std::string& x, std::optional<std::size_t> i) {
    std::string msg = "derivative vanishes at x = " + x;
    if (i) msg += " (estimate x" + std::to_string(*i + 1) + ")";
    return msg;
  }

  std::string x_;
  std::optional<std::size_t> root_index_;
};

class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

/// Too few admissible points to estimate an order of convergence.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Separation requested for fewer than two roots.
class UndefinedSeparationError : public Error {
 public:
  using Error::Error;
};

/// A domain invariant is violated (multiplicity sum, degree, precision bounds...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A problem or trace file does not match its schema. `path` is a JSON path like `$.init[2]`.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace simulroot
