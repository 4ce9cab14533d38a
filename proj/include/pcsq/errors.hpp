#pragma once

#include <stdexcept>
#include <string>

namespace pcsq {

// Base for every failure raised by the library; the CLI maps subclasses to
// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

// Parameters outside the supported domain (q < 0, non-finite zeta, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series term left the representable floating-point range.
class Overflow : public Error {
 public:
  using Error::Error;
};

// zeta = 0 makes every heterodyne angle a minimizer.
class ZeroAmplitude : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace pcsq
