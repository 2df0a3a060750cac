#include "qhg/classical_gamma.hpp"

#include <array>
#include <cmath>

namespace qhg {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,    1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

void check_pole(Complex z) {
  if (z.real() > 0.5) return;
  const double n = std::round(z.real());
  if (std::abs(z - Complex{n, 0.0}) < 1e-12)
    fail(ErrorKind::pole, "Gamma pole at " + std::to_string(static_cast<long long>(n)));
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!is_finite(z)) fail(ErrorKind::domain, "log_gamma: non-finite argument");
  check_pole(z);
  Complex shift{};
  Complex w = z;
  while (std::abs(w) < 10.0 || w.real() < 0.0) {
    shift += std::log(w);
    w += 1.0;
  }
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{};
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rising_factorial(Complex a, int k) {
  Complex r{1.0, 0.0};
  for (int j = 0; j < k; ++j) r *= a + static_cast<double>(j);
  return r;
}

}  // namespace qhg
