#include "qhg/euler.hpp"

#include <cmath>
#include <limits>

namespace qhg {

EulerProblem check_conditions_E(const HGParams& p, const QModulus& q) {
  if (!q.is_unit()) fail(ErrorKind::parameter, "Euler-type integral requires |q| = 1");
  const Complex bc = p.b - p.c;
  if (bc.imag() == 0.0 && bc.real() > 0.0)
    fail(ErrorKind::parameter, "condition E1 violated: b - c = " + format_complex(bc) +
                                   " is a positive real");
  if (p.a.imag() == 0.0 && p.a.real() < 0.0)
    fail(ErrorKind::parameter, "condition E2 violated: a = " + format_complex(p.a) +
                                   " is a negative real");
  EulerProblem prob{p, q, true, {}};
  if (!(p.b.real() > 0.0)) {
    prob.e3_holds = false;
    prob.warnings.push_back("condition E3 violated: Re b <= 0; the integral may diverge");
  }
  if (!((p.a - p.c - 1.0).real() > 0.0)) {
    prob.e3_holds = false;
    prob.warnings.push_back("condition E3 violated: Re(a-c-1) <= 0; the integral may diverge");
  }
  return prob;
}

namespace {

void check_x(Complex x) {
  if (!is_finite(x)) fail(ErrorKind::domain, "x must be finite");
  if (x.imag() == 0.0 && x.real() < 0.0)
    fail(ErrorKind::domain, "x = " + format_complex(x) + " lies on the negative real axis");
}

}  // namespace

Complex psi_integrand_log(const EulerProblem& prob, Complex s, Complex x) {
  const auto& p = prob.params;
  const S2Value n1 = gamma_tilde(s + x, prob.q);
  const S2Value n2 = gamma_tilde(s + p.c - p.b, prob.q);
  for (const S2Value* v : {&n1, &n2})
    if (v->status == S2Status::pole)
      fail(ErrorKind::pole, "Euler integrand pole from the numerator at s = " + format_complex(s));
  const S2Value d1 = gamma_tilde(s + x + p.a, prob.q);
  const S2Value d2 = gamma_tilde(s + 1.0, prob.q);
  for (const S2Value* v : {&d1, &d2})
    if (v->status == S2Status::zero)
      fail(ErrorKind::pole, "Euler integrand pole from the denominator at s = " +
                                format_complex(s));
  if (n1.status == S2Status::zero || n2.status == S2Status::zero ||
      d1.status == S2Status::pole || d2.status == S2Status::pole)
    return {-std::numeric_limits<double>::infinity(), 0.0};
  return n1.log_value + n2.log_value - d1.log_value - d2.log_value + p.b * s * prob.q.log_q();
}

Complex psi_integrand(const EulerProblem& prob, Complex s, Complex x) {
  check_x(x);
  const Complex l = psi_integrand_log(prob, s, x);
  if (std::isinf(l.real())) return 0.0;
  return std::exp(l);
}

ContourRequest euler_contour_request(const EulerProblem& prob, Complex x, double height,
                                     double clearance) {
  check_x(x);
  const auto& p = prob.params;
  const std::vector<Complex> steps = {1.0, 1.0 / prob.q.omega()};
  const std::vector<IndexSign> nonpos = {IndexSign::nonpositive, IndexSign::nonpositive};
  const std::vector<IndexSign> pos = {IndexSign::positive, IndexSign::positive};
  ContourRequest req;
  req.right_families = {{-x, steps, nonpos, "-x+n1+n2/omega"},
                        {p.b - p.c, steps, nonpos, "b-c+n1+n2/omega"}};
  req.left_families = {{-x - p.a, steps, pos, "-x-a+n1+n2/omega"},
                       {-1.0, steps, pos, "-1+n1+n2/omega"}};
  req.clearance = clearance;
  req.height = height;
  return req;
}

Contour build_euler_contour(const EulerProblem& prob, Complex x, double height, double clearance) {
  return build_separating_contour(euler_contour_request(prob, x, height, clearance));
}

BarnesEvaluation capital_psi(const EulerProblem& prob, Complex x, const QuadratureConfig& cfg,
                             const Contour* contour) {
  check_x(x);
  const Contour path = contour ? *contour : build_euler_contour(prob, x);
  auto f = [&](Complex s) -> Complex {
    const Complex l = psi_integrand_log(prob, s, x);
    if (std::isinf(l.real())) return 0.0;
    return std::exp(l);
  };
  const auto r = contour_integral(f, path, cfg);
  BarnesEvaluation out;
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.contour_used = path;
  out.warnings = prob.warnings;
  return out;
}

Complex jackson_integral(const std::function<Complex(Complex)>& f, const QModulus& q,
                         double tail_tol, long max_terms) {
  if (q.is_unit()) fail(ErrorKind::domain, "jackson_integral requires 0 < q < 1");
  const double qr = q.q().real();
  Complex sum{};
  double qn = 1.0;
  int small = 0;
  for (long n = 0; n < max_terms; ++n) {
    const Complex term = qn * f(qn);
    sum += term;
    if (!is_finite(sum)) fail(ErrorKind::divergence, "Jackson sum overflowed");
    small = std::abs(term) <= tail_tol * std::abs(sum) ? small + 1 : 0;
    if (small == 3) return (1.0 - qr) * sum;
    qn *= qr;
    if (qn == 0.0) return (1.0 - qr) * sum;
  }
  fail(ErrorKind::divergence, "Jackson sum tail does not decay");
}

Complex euler_jackson_phi(const HGParams& p, const QModulus& q, Complex z, double tail_tol) {
  if (q.is_unit()) fail(ErrorKind::domain, "euler_jackson_phi requires 0 < q < 1");
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::domain, "euler_jackson_phi requires |z| < 1");
  if (!(p.b.real() > 0.0)) fail(ErrorKind::parameter, "euler_jackson_phi requires Re b > 0");
  const double qr = q.q().real();
  const Complex qa = q.pow(p.a), qb = q.pow(p.b), qcb = q.pow(p.c - p.b);
  const Complex pref = log_gamma_q_classical(p.c, q) - log_gamma_q_classical(p.b, q) -
                       log_gamma_q_classical(p.c - p.b, q);
  // Summand at t = q^n, through its ratio to the previous one.
  Complex term = std::exp(log_q_pochhammer_inf(z * qa, q) + log_q_pochhammer_inf(qr, q) -
                          log_q_pochhammer_inf(z, q) - log_q_pochhammer_inf(qcb, q));
  Complex sum = term;
  double qn = 1.0;
  int small = 0;
  for (long n = 0; n < 10000000; ++n) {
    const Complex ratio = qb * (1.0 - qn * z) * (1.0 - qn * qcb) /
                          ((1.0 - qn * qa * z) * (1.0 - qn * qr));
    term *= ratio;
    sum += term;
    if (!is_finite(sum)) fail(ErrorKind::divergence, "Jackson sum overflowed");
    small = std::abs(term) <= tail_tol * std::abs(sum) ? small + 1 : 0;
    if (small == 3 || term == Complex{}) return std::exp(pref) * (1.0 - qr) * sum;
    qn *= qr;
  }
  fail(ErrorKind::divergence, "Jackson sum tail does not decay");
}

}  // namespace qhg
