#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qhg {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  domain,        // argument outside the function's domain
  parameter,     // invalid parameter combination (conditions B1/B2, E1-E3, c-pole, ...)
  pole,          // evaluation point too close to a pole
  sector,        // arg(-z) outside the admissible sector
  contour,       // pole families cannot be separated
  accuracy,      // requested accuracy not reached
  divergence,    // tail of a series or integral does not decay
  inconclusive,  // winding number not close to an integer
  probe,         // non-finite samples on a probe circle
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Accuracy failure that still carries the best value obtained.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, Complex best, double error_estimate)
      : Error(ErrorKind::accuracy, what), best_(best), error_estimate_(error_estimate) {}
  Complex best_value() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  Complex best_;
  double error_estimate_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

bool is_finite(Complex z);

/// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z);

/// log(1 + z) without cancellation for small |z| (principal branch).
Complex log1p(Complex z);

/// Reduce the imaginary part of a logarithm into (-pi, pi].
Complex principal_log_class(Complex log_value);

std::string format_complex(Complex z);

}  // namespace qhg
