#include "qhg/qseries.hpp"

#include <cmath>

namespace qhg {

void SeriesConfig::validate() const {
  if (max_terms < 1) fail(ErrorKind::domain, "SeriesConfig: max_terms must be >= 1");
  if (!(tail_tol > 0.0)) fail(ErrorKind::domain, "SeriesConfig: tail_tol must be > 0");
}

namespace {

// Sums c_0 = 1, c_{k+1} = c_k * ratio(k) * z, stopping after three
// consecutive terms below tail_tol * |sum|.
template <class Ratio>
SeriesResult sum_series(Ratio ratio, Complex z, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::domain, "series requires |z| < 1");
  SeriesResult r;
  Complex term{1.0, 0.0};
  Complex sum = term;
  int small = 0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    term *= ratio(k) * z;
    sum += term;
    if (!is_finite(sum)) fail(ErrorKind::divergence, "series overflowed");
    small = std::abs(term) < cfg.tail_tol * std::abs(sum) ? small + 1 : 0;
    if (small == 3 || term == Complex{}) {
      r.value = sum;
      r.terms = k + 2;
      return r;
    }
  }
  r.value = sum;
  r.terms = cfg.max_terms + 1;
  r.converged = false;
  return r;
}

}  // namespace

SeriesResult hypergeometric_f(const HGParams& p, Complex z, const SeriesConfig& cfg) {
  const double n = std::round(p.c.real());
  if (n <= 0.0 && std::abs(p.c - Complex{n, 0.0}) < 1e-12)
    fail(ErrorKind::parameter, "hypergeometric_f: c is a nonpositive integer");
  return sum_series(
      [&](int k) {
        const double kk = k;
        return (p.a + kk) * (p.b + kk) / ((p.c + kk) * (kk + 1.0));
      },
      z, cfg);
}

SeriesResult basic_phi(const HGParams& p, const QModulus& q, Complex z, const SeriesConfig& cfg) {
  if (q.is_unit())
    fail(ErrorKind::domain, "basic_phi diverges for |q| = 1; use formal_phi_coefficients");
  const Complex qa = q.pow(p.a), qb = q.pow(p.b), qc = q.pow(p.c);
  const double qr = q.q().real();
  // Running powers q^k keep the ratio cheap.
  double qk = 1.0;
  return sum_series(
      [&](int) {
        const Complex num = (1.0 - qa * qk) * (1.0 - qb * qk);
        const Complex den = (1.0 - qc * qk) * (1.0 - qk * qr);
        if (std::abs(1.0 - qc * qk) < 1e-14)
          fail(ErrorKind::parameter, "basic_phi: (q^c;q)_k has a vanishing factor");
        qk *= qr;
        return num / den;
      },
      z, cfg);
}

std::vector<Complex> formal_phi_coefficients(const HGParams& p, const QModulus& q, int n) {
  if (n < 1) fail(ErrorKind::domain, "formal_phi_coefficients: n must be >= 1");
  std::vector<Complex> c(n);
  c[0] = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double kk = k;
    const Complex den = q_bracket(p.c + kk, q) * q_bracket(kk + 1.0, q);
    if (std::abs(q_bracket(p.c + kk, q)) < 1e-12 || std::abs(q_bracket(kk + 1.0, q)) < 1e-12)
      fail(ErrorKind::parameter, "formal_phi_coefficients: vanishing bracket at k = " +
                                     std::to_string(k));
    c[k + 1] = c[k] * q_bracket(p.a + kk, q) * q_bracket(p.b + kk, q) / den;
  }
  return c;
}

Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z) {
  Complex r{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
  return r;
}

}  // namespace qhg
