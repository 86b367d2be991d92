#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rkstab {

using Complex = std::complex<double>;

/// Base class for library errors; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or syntactically malformed input (files, method specs).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure at run time (singular systems, overflow).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// I - zA is singular: z is a pole of the stability function.
class PoleError : public NumericalError {
 public:
  explicit PoleError(Complex z)
      : NumericalError("stability function pole: I - zA is singular at z = (" +
                       std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")"),
        z_(z) {}
  Complex pole() const { return z_; }

 private:
  Complex z_;
};

/// A stage state became non-finite during time stepping.
class OverflowError : public NumericalError {
 public:
  explicit OverflowError(int sweep, long step = -1)
      : NumericalError(describe(sweep, step)), sweep_(sweep), step_(step) {}
  int sweep() const { return sweep_; }
  long step() const { return step_; }

 private:
  static std::string describe(int sweep, long step) {
    std::string msg = "non-finite state in correction sweep " + std::to_string(sweep);
    if (step >= 0) msg += " of step " + std::to_string(step);
    return msg;
  }
  int sweep_;
  long step_;
};

}  // namespace rkstab
