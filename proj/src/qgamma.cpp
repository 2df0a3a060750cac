#include "qhg/qgamma.hpp"

#include <cmath>
#include <limits>

#include "qhg/numerics.hpp"

namespace qhg {

QModulus::RationalApproach QModulus::nearest_rational(double omega, int max_denominator) {
  RationalApproach best;
  best.scaled_distance = std::numeric_limits<double>::infinity();
  for (long r = 1; r <= max_denominator; ++r) {
    const long p = std::lround(omega * static_cast<double>(r));
    const double dist = std::abs(omega - static_cast<double>(p) / static_cast<double>(r)) *
                        static_cast<double>(r * r);
    if (dist < best.scaled_distance) best = {p, r, dist};
  }
  return best;
}

QModulus QModulus::unit(double omega, double guard) {
  if (!(omega > 0.0 && omega < 1.0)) fail(ErrorKind::domain, "unit regime requires 0 < omega < 1");
  if (guard < 0.0) fail(ErrorKind::domain, "irrationality guard must be >= 0");
  if (guard > 0.0) {
    const auto near = nearest_rational(omega);
    if (near.scaled_distance < guard)
      fail(ErrorKind::domain, "omega = " + std::to_string(omega) + " is too close to " +
                                  std::to_string(near.p) + "/" + std::to_string(near.r) +
                                  " (r^2 |omega - p/r| = " + std::to_string(near.scaled_distance) +
                                  " < " + std::to_string(guard) + ")");
  }
  QModulus m;
  m.regime_ = QRegime::unit;
  m.omega_ = omega;
  m.log_q_ = Complex{0.0, 2.0 * kPi * omega};
  return m;
}

QModulus QModulus::classical(double tau) {
  if (!(tau > 0.0 && std::isfinite(tau))) fail(ErrorKind::domain, "classical regime requires tau > 0");
  QModulus m;
  m.regime_ = QRegime::classical;
  m.tau_ = tau;
  m.log_q_ = Complex{-2.0 * kPi * tau, 0.0};
  return m;
}

QModulus QModulus::classical_from_q(double q) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::domain, "classical regime requires 0 < q < 1");
  return classical(-std::log(q) / (2.0 * kPi));
}

OmegaPair QModulus::periods() const {
  if (is_unit()) return OmegaPair::make(1.0, 1.0 / omega_);
  return OmegaPair::make_complex(1.0, Complex{0.0, -1.0 / tau_});
}

Complex q_bracket(Complex z, const QModulus& q) {
  if (!is_finite(z)) fail(ErrorKind::domain, "q_bracket: non-finite argument");
  return expm1(z * q.log_q()) / expm1(q.log_q());
}

Complex gamma_tilde_prefactor_log(Complex z, const QModulus& q) {
  const Complex log_qm1 = std::log(expm1(q.log_q()));
  return (1.0 - z) * log_qm1 + (z - 1.0) * Complex{0.0, 0.5 * kPi} +
         0.25 * z * (z - 1.0) * q.log_q();
}

S2Value gamma_tilde(Complex z, const QModulus& q) {
  const S2Value s = log_s2(z, q.periods());
  S2Value out;
  out.lattice_point = s.lattice_point;
  switch (s.status) {
    case S2Status::zero:
      out.status = S2Status::pole;
      out.log_value = {std::numeric_limits<double>::infinity(), 0.0};
      out.value = {std::numeric_limits<double>::infinity(), 0.0};
      return out;
    case S2Status::pole:
      out.status = S2Status::zero;
      out.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
      out.value = 0.0;
      return out;
    case S2Status::regular: break;
  }
  out.log_value = gamma_tilde_prefactor_log(z, q) - s.log_value;
  out.value = std::exp(out.log_value);
  return out;
}

namespace {

void require_classical(const QModulus& q, const char* what) {
  if (q.is_unit()) fail(ErrorKind::domain, std::string(what) + " requires the classical regime");
}

}  // namespace

Complex log_q_pochhammer_inf(Complex a, const QModulus& q) {
  require_classical(q, "(a;q)_inf");
  const double qr = q.q().real();
  Complex sum{};
  Complex term = a;
  for (long n = 0;; ++n) {
    if (std::abs(term) < 1e-17) break;
    const Complex f = 1.0 - term;
    if (std::abs(f) < 1e-14) fail(ErrorKind::pole, "(a;q)_inf has a vanishing factor");
    sum += log1p(-term);
    term *= qr;
    if (n > 100000000) fail(ErrorKind::divergence, "(a;q)_inf did not converge");
  }
  return sum;
}

Complex q_pochhammer_inf(Complex a, const QModulus& q) {
  require_classical(q, "(a;q)_inf");
  const double qr = q.q().real();
  Complex prod{1.0, 0.0};
  Complex term = a;
  while (std::abs(term) >= 1e-17) {
    prod *= 1.0 - term;
    term *= qr;
  }
  return prod;
}

Complex q_pochhammer(Complex a, const QModulus& q, int k) {
  if (k < 0) fail(ErrorKind::domain, "q_pochhammer: k must be >= 0");
  Complex prod{1.0, 0.0};
  for (int l = 0; l < k; ++l) prod *= 1.0 - a * q.pow(static_cast<double>(l));
  return prod;
}

Complex log_gamma_q_classical(Complex z, const QModulus& q) {
  require_classical(q, "gamma_q_classical");
  const Complex qz = q.pow(z);
  // Poles where q^{z+n} = 1, i.e. z = -n + i k / tau.
  if (z.real() < 0.5) {
    const double n = std::round(-z.real());
    if (n >= 0.0 && std::abs(expm1((z + n) * q.log_q())) < 1e-12)
      fail(ErrorKind::pole, "classical q-gamma pole near " + format_complex(z));
  }
  const double lq = std::log1p(-q.q().real());
  return log_q_pochhammer_inf(q.q(), q) - log_q_pochhammer_inf(qz, q) + (1.0 - z) * lq;
}

Complex gamma_q_classical(Complex z, const QModulus& q) {
  return std::exp(log_gamma_q_classical(z, q));
}

Complex asymptotic_main_term(Complex z, const QModulus& q, ImSign sign) {
  if (!q.is_unit()) fail(ErrorKind::domain, "asymptotic_main_term requires the unit regime");
  if (z.imag() == 0.0 || (z.imag() > 0.0) != (sign == ImSign::positive))
    fail(ErrorKind::domain, "asymptotic_main_term: sign must match the sign of Im z");
  const double w = q.omega();
  const double sg = sign == ImSign::positive ? 1.0 : -1.0;
  return gamma_tilde_prefactor_log(z, q) -
         sg * Complex{0.0, kPi} * (0.5 * w * z * z - 0.5 * (w + 1.0) * z);
}

}  // namespace qhg
