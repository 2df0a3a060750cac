#include "qhg/core.hpp"

#include <cmath>
#include <cstdio>

namespace qhg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::pole: return "pole";
    case ErrorKind::sector: return "sector";
    case ErrorKind::contour: return "contour";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::inconclusive: return "inconclusive";
    case ErrorKind::probe: return "probe";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

Complex log1p(Complex z) {
  if (std::abs(z) > 0.5) return std::log(1.0 + z);
  // |1+z|^2 = 1 + 2x + x^2 + y^2
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

Complex principal_log_class(Complex log_value) {
  double im = std::remainder(log_value.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {log_value.real(), im};
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
  return buf;
}

}  // namespace qhg
