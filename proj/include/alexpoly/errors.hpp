#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alexpoly {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact division left a nonzero remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// Canonical forms are undefined for the zero polynomial.
class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("zero polynomial has no canonical form") {}
};

/// Division of a rational function by zero.
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Malformed or out-of-contract input (bad fractions, bad policies, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a tangle expression, polynomial, PD file or corpus line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace alexpoly
