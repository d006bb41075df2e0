#ifndef PROLATE_ERRORS_HPP
#define PROLATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prolate {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. K(m) at m >= 1).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the window where an evaluator is valid.
class RangeError : public Error {
  public:
    using Error::Error;
};

/// A computation finished but could not meet its accuracy target.
class AccuracyError : public Error {
  public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

/// ODE integration stopped (step underflow or step budget exhausted).
class IntegrationError : public Error {
  public:
    IntegrationError(const std::string& what, double last_x) : Error(what), last_x_(last_x) {}

    double last_x() const { return last_x_; }

  private:
    double last_x_;
};

/// Root bracket without a sign change.
class BracketError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
  public:
    FormatError(const std::string& what, int line) : Error(what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

/// Invalid user-facing request (bad flag value, unknown format, count 0, ...).
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Linear-algebra or other numeric failure.
class NumericError : public Error {
  public:
    using Error::Error;
};

} // namespace prolate

#endif
