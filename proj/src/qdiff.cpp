#include "qhg/qdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhg {

namespace {

ResidualReport make_report(Complex first, Complex second, Complex point) {
  ResidualReport r;
  r.residual = first - second;
  r.scale = std::max(std::abs(first), std::abs(second));
  if (!(r.scale > 0.0)) r.scale = std::numeric_limits<double>::min();
  r.normalized = std::abs(r.residual) / r.scale;
  r.point = point;
  return r;
}

void require_nonzero(Complex z, const char* what) {
  if (z == Complex{}) fail(ErrorKind::domain, std::string(what) + ": z = 0");
}

}  // namespace

Complex apply_Tq(const SampledFunction& f, Complex z, const QModulus& q) { return f(q.q() * z); }

Complex apply_Dq(const SampledFunction& f, Complex z, const QModulus& q) {
  require_nonzero(z, "apply_Dq");
  return (f(z) - f(q.q() * z)) / (-expm1(q.log_q()) * z);
}

Complex apply_theta_bracket(const SampledFunction& f, Complex z, const QModulus& q, Complex a) {
  return (f(z) - q.pow(a) * f(q.q() * z)) / (-expm1(q.log_q()));
}

ResidualReport lq_from_samples(Complex f0, Complex f1, Complex f2, const HGParams& p, Complex z,
                               const QModulus& q) {
  require_nonzero(z, "L_q");
  const Complex omq = -expm1(q.log_q());
  const Complex d2 = omq * omq;
  const Complex qc1 = q.pow(p.c - 1.0);
  const Complex qa = q.pow(p.a), qb = q.pow(p.b);
  const Complex first = (f0 - (1.0 + qc1) * f1 + qc1 * f2) / (d2 * z);
  const Complex second = (f0 - (qa + qb) * f1 + qa * qb * f2) / d2;
  return make_report(first, second, z);
}

ResidualReport apply_Lq(const SampledFunction& f, const HGParams& p, Complex z,
                        const QModulus& q) {
  const Complex qq = q.q();
  return lq_from_samples(f(z), f(qq * z), f(qq * qq * z), p, z, q);
}

ResidualReport apply_Lq_log(const SampledFunction& f_of_ell, const HGParams& p, Complex ell,
                            const QModulus& q) {
  const Complex lq = q.log_q();
  return lq_from_samples(f_of_ell(ell), f_of_ell(ell + lq), f_of_ell(ell + 2.0 * lq), p,
                         -std::exp(ell), q);
}

ResidualReport lplus_from_samples(Complex g0, Complex g1, Complex g2, const HGParams& p, Complex x,
                                  const QModulus& q) {
  const Complex omq = -expm1(q.log_q());
  const Complex d2 = omq * omq;
  const Complex qc1 = q.pow(p.c - 1.0);
  const Complex qa = q.pow(p.a), qb = q.pow(p.b);
  const Complex first = q.pow(-x) * (g0 - (1.0 + qc1) * g1 + qc1 * g2) / d2;
  const Complex second = (g0 - (qa + qb) * g1 + qa * qb * g2) / d2;
  return make_report(first, second, x);
}

ResidualReport apply_Lplus(const SampledFunction& g, const HGParams& p, Complex x,
                           const QModulus& q) {
  return lplus_from_samples(g(x), g(x + 1.0), g(x + 2.0), p, x, q);
}

ExpandedCheck expanded_Lq_crosscheck(const SampledFunction& f, const HGParams& p, Complex z,
                                     const QModulus& q) {
  require_nonzero(z, "expanded L_q");
  const Complex qq = q.q();
  const Complex f0 = f(z), f1 = f(qq * z), f2 = f(qq * qq * z);
  const Complex omq = -expm1(q.log_q());
  const Complex dq0 = (f0 - f1) / (omq * z);
  const Complex dq1 = (f1 - f2) / (omq * qq * z);
  const Complex dq2 = (dq0 - dq1) / (omq * z);
  const Complex qa = q.pow(p.a), qb = q.pow(p.b), qc = q.pow(p.c);
  const Complex qab1 = q.pow(p.a + p.b + 1.0);
  const Complex second_order = z * (qc - qab1 * z) * dq2;
  const Complex first_order =
      (q_bracket(p.c, q) - ((1.0 - qa) * (1.0 - qb) - (1.0 - qab1)) / omq * z) * dq0;
  const Complex zeroth = q_bracket(p.a, q) * q_bracket(p.b, q) * f0;

  ExpandedCheck out;
  out.factored = lq_from_samples(f0, f1, f2, p, z, q);
  out.expanded.residual = second_order - first_order - zeroth;
  out.expanded.scale = std::max({std::abs(second_order), std::abs(first_order), std::abs(zeroth)});
  out.expanded.normalized =
      out.expanded.scale > 0.0 ? std::abs(out.expanded.residual) / out.expanded.scale : 0.0;
  out.expanded.point = z;
  out.deviation =
      std::abs(out.expanded.residual - out.factored.residual) / out.factored.scale;
  return out;
}

ExpandedCheck expanded_Lplus_crosscheck(const SampledFunction& g, const HGParams& p, Complex x,
                                        const QModulus& q) {
  const Complex g0 = g(x), g1 = g(x + 1.0), g2 = g(x + 2.0);
  const Complex qq = q.q();
  const Complex omq = -expm1(q.log_q());
  const Complex qa = q.pow(p.a), qb = q.pow(p.b), qc = q.pow(p.c);
  const Complex qmx = q.pow(-x);
  const Complex t2 = (q.pow(p.c - 1.0 - x) - q.pow(p.a + p.b)) * (g2 - (1.0 + qq) * g1 + qq * g0);
  const Complex t1 =
      ((1.0 - qc) * qmx + (1.0 - qa) * (1.0 - qb) - (1.0 - q.pow(p.a + p.b + 1.0))) * (g1 - g0);
  const Complex t0 = (1.0 - qa) * (1.0 - qb) * g0;
  const Complex d2 = omq * omq;

  ExpandedCheck out;
  out.factored = lplus_from_samples(g0, g1, g2, p, x, q);
  out.expanded.residual = (t2 - t1 - t0) / d2;
  out.expanded.scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0)}) / std::abs(d2);
  out.expanded.normalized =
      out.expanded.scale > 0.0 ? std::abs(out.expanded.residual) / out.expanded.scale : 0.0;
  out.expanded.point = x;
  out.deviation =
      std::abs(out.expanded.residual - out.factored.residual) / out.factored.scale;
  return out;
}

}  // namespace qhg
