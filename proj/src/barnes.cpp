#include "qhg/barnes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qhg/classical_gamma.hpp"

namespace qhg {

const char* to_string(SeparationClause clause) {
  switch (clause) {
    case SeparationClause::real_ordering: return "real-ordering";
    case SeparationClause::imag_separation: return "imag-separation";
  }
  return "unknown";
}

BarnesProblem check_conditions_B(const HGParams& p, const QModulus& q, double delta) {
  if (!q.is_unit()) fail(ErrorKind::parameter, "Barnes-type integral requires |q| = 1");
  const Complex a1[2] = {p.a, p.b};
  const Complex a2[2] = {p.c, Complex{1.0, 0.0}};
  const char* n1[2] = {"a", "b"};
  const char* n2[2] = {"c", "1"};
  BarnesProblem prob;
  prob.params = p;
  prob.q = q;

  bool real_ok = true, imag_ok = true;
  std::string real_violation, imag_violation;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (!(a1[i].real() > a2[j].real()) && real_violation.empty()) {
        real_ok = false;
        real_violation = std::string("Re ") + n1[i] + " <= Re " + n2[j];
      }
      if (a1[i].imag() == a2[j].imag() && imag_violation.empty()) {
        imag_ok = false;
        imag_violation = std::string("Im ") + n1[i] + " == Im " + n2[j];
      }
    }
  if (real_ok) prob.clause = SeparationClause::real_ordering;
  else if (imag_ok) prob.clause = SeparationClause::imag_separation;
  else
    fail(ErrorKind::parameter, "condition B1 violated: " + real_violation + " and " +
                                   imag_violation);

  const double w = q.omega();
  const double r_plus = (p.a + p.b - p.c + 1.0).real();
  const double r_minus = (p.a + p.b - p.c - 1.0).real();
  prob.b2_margin = 1.0 - w * r_plus;
  if (!(prob.b2_margin > 0.0))
    fail(ErrorKind::parameter, "condition B2 violated: omega Re(a+b-c+1) = " +
                                   std::to_string(w * r_plus) + " >= 1");

  const double delta_max = kPi - kPi * w * r_plus;
  if (delta <= 0.0) delta = std::min(0.1, 0.5 * delta_max);
  if (!(delta < delta_max))
    fail(ErrorKind::parameter, "delta must satisfy 0 < delta < pi - pi omega Re(a+b-c+1) = " +
                                   std::to_string(delta_max));
  prob.delta = delta;
  const double arg_max = std::min(kPi, kPi - 2.0 * kPi * w * r_plus);
  const double arg_min = -kPi + delta;
  if (!(arg_min < arg_max))
    fail(ErrorKind::parameter, "the sector of definition is empty for these parameters");
  prob.sector = SectorSpec::make(arg_min, arg_max, 1.0);
  prob.convergence_arg_max = kPi - 2.0 * kPi * w * r_minus;
  return prob;
}

Complex barnes_gamma_ratio_log(const BarnesProblem& prob, Complex s) {
  const auto& p = prob.params;
  const S2Value na = gamma_tilde(p.a + s, prob.q);
  const S2Value nb = gamma_tilde(p.b + s, prob.q);
  for (const S2Value* v : {&na, &nb})
    if (v->status == S2Status::pole)
      fail(ErrorKind::pole, "integrand pole from the a/b families at s = " + format_complex(s));
  const S2Value dc = gamma_tilde(p.c + s, prob.q);
  const S2Value d1 = gamma_tilde(1.0 + s, prob.q);
  for (const S2Value* v : {&dc, &d1})
    if (v->status == S2Status::zero)
      fail(ErrorKind::pole, "integrand pole from the c/1 families at s = " + format_complex(s));
  if (dc.status == S2Status::pole || d1.status == S2Status::pole)
    return {-std::numeric_limits<double>::infinity(), 0.0};
  if (na.status == S2Status::zero || nb.status == S2Status::zero)
    return {-std::numeric_limits<double>::infinity(), 0.0};
  return na.log_value + nb.log_value - dc.log_value - d1.log_value;
}

Complex barnes_integrand_log_variable(const BarnesProblem& prob, Complex s, Complex log_neg_z) {
  const Complex g = barnes_gamma_ratio_log(prob, s);
  if (std::isinf(g.real())) return 0.0;
  return std::exp(g + log_barnes_kernel(s, log_neg_z));
}

Complex barnes_integrand(const BarnesProblem& prob, Complex s, Complex z) {
  return barnes_integrand_log_variable(prob, s, log_neg(z, prob.sector));
}

ContourRequest barnes_contour_request(const BarnesProblem& prob, double height, double clearance) {
  const auto& p = prob.params;
  const Complex step2 = 1.0 / prob.q.omega();
  const std::vector<Complex> steps = {1.0, step2};
  const std::vector<IndexSign> nonpos = {IndexSign::nonpositive, IndexSign::nonpositive};
  const std::vector<IndexSign> pos = {IndexSign::positive, IndexSign::positive};
  ContourRequest req;
  req.right_families = {{-p.a, steps, nonpos, "-a+n1+n2/omega"},
                        {-p.b, steps, nonpos, "-b+n1+n2/omega"}};
  req.left_families = {{-p.c, steps, pos, "-c+n1+n2/omega"},
                       {-1.0, steps, pos, "-1+n1+n2/omega"},
                       {0.0, {1.0}, {IndexSign::nonnegative}, "m"}};
  req.clearance = clearance;
  req.height = height;
  return req;
}

Contour build_barnes_contour(const BarnesProblem& prob, double height, double clearance) {
  return build_separating_contour(barnes_contour_request(prob, height, clearance));
}

Complex barnes_prefactor_log(const BarnesProblem& prob) {
  const auto& p = prob.params;
  const S2Value gc = gamma_tilde(p.c, prob.q);
  const S2Value ga = gamma_tilde(p.a, prob.q);
  const S2Value gb = gamma_tilde(p.b, prob.q);
  for (const S2Value* v : {&gc, &ga, &gb})
    if (v->status != S2Status::regular)
      fail(ErrorKind::parameter, "prefactor Gt(c)/(Gt(a)Gt(b)) is singular or vanishes");
  return gc.log_value - ga.log_value - gb.log_value;
}

namespace {

// (-1 / 2 pi i) * exp(log_prefactor) * integral of exp(log_ratio(s)) pi (-z)^s / sin(pi s),
// one value per log-variable.
std::vector<BarnesEvaluation> barnes_type(const std::function<Complex(Complex)>& log_ratio,
                                          const std::vector<Complex>& ells, Complex log_prefactor,
                                          const Contour& contour, const QuadratureConfig& cfg) {
  BatchIntegrand f = [&](Complex s, std::span<Complex> out) {
    const Complex g = log_ratio(s);
    if (std::isinf(g.real())) {
      std::fill(out.begin(), out.end(), Complex{});
      return;
    }
    const Complex base = log_prefactor + g;
    for (std::size_t j = 0; j < ells.size(); ++j)
      out[j] = std::exp(base + log_barnes_kernel(s, ells[j]));
  };
  QuadratureConfig c = cfg;
  const auto r = contour_integral(f, ells.size(), contour, c);
  const Complex factor = -1.0 / (2.0 * kPi * kI);
  std::vector<BarnesEvaluation> out(ells.size());
  for (std::size_t j = 0; j < ells.size(); ++j) {
    out[j].value = factor * r.values[j];
    out[j].error_estimate = std::abs(factor) * r.error_estimates[j];
    out[j].contour_used = contour;
  }
  return out;
}

}  // namespace

std::vector<BarnesEvaluation> capital_phi_log_variable(const BarnesProblem& prob,
                                                       const std::vector<Complex>& ells,
                                                       const QuadratureConfig& cfg,
                                                       const Contour* contour) {
  for (const Complex& ell : ells)
    if (!(ell.imag() > -kPi && ell.imag() < prob.convergence_arg_max) || !(ell.real() < 0.0))
      fail(ErrorKind::sector, "log-variable " + format_complex(ell) +
                                  " outside the convergence region of the Barnes-type integral");
  const Contour path = contour ? *contour : build_barnes_contour(prob);
  const Complex pref = barnes_prefactor_log(prob);
  return barnes_type([&](Complex s) { return barnes_gamma_ratio_log(prob, s); }, ells, pref, path,
                     cfg);
}

BarnesEvaluation capital_phi(const BarnesProblem& prob, Complex z, const QuadratureConfig& cfg,
                             const Contour* contour) {
  const Complex ell = log_neg(z, prob.sector);
  return capital_phi_log_variable(prob, {ell}, cfg, contour).front();
}

BarnesEvaluation classical_barnes(const HGParams& p, Complex z, const QuadratureConfig& cfg,
                                  double delta) {
  if (!(delta > 0.0 && delta < kPi)) fail(ErrorKind::domain, "delta must lie in (0, pi)");
  const SectorSpec sector = SectorSpec::make(-kPi + delta, kPi - delta, 1.0);
  const Complex ell = log_neg(z, sector);
  for (const Complex& v : {p.a, p.b}) {
    const double n = std::round(v.real());
    if (n <= 0.0 && std::abs(v - Complex{n, 0.0}) < 1e-12)
      fail(ErrorKind::parameter, "classical_barnes: a and b must not be nonpositive integers");
  }
  ContourRequest req;
  req.right_families = {{-p.a, {1.0}, {IndexSign::nonpositive}, "-a+n"},
                        {-p.b, {1.0}, {IndexSign::nonpositive}, "-b+n"}};
  req.left_families = {{0.0, {1.0}, {IndexSign::nonnegative}, "m"}};
  const Contour path = build_separating_contour(req);
  const Complex pref = log_gamma(p.c) - log_gamma(p.a) - log_gamma(p.b);
  auto ratio = [&](Complex s) {
    return log_gamma(p.a + s) + log_gamma(p.b + s) - log_gamma(p.c + s) - log_gamma(1.0 + s);
  };
  return barnes_type(ratio, {ell}, pref, path, cfg).front();
}

BarnesEvaluation watson_integral(const HGParams& p, const QModulus& q, Complex z,
                                 const QuadratureConfig& cfg, double delta) {
  if (q.is_unit()) fail(ErrorKind::domain, "watson_integral requires 0 < q < 1");
  if (!(delta > 0.0 && delta < kPi)) fail(ErrorKind::domain, "delta must lie in (0, pi)");
  const SectorSpec sector = SectorSpec::make(-kPi + delta, kPi - delta, 1.0);
  const Complex ell = log_neg(z, sector);
  const Complex vstep{0.0, 1.0 / q.tau()};
  const std::vector<IndexSign> signs = {IndexSign::nonpositive, IndexSign::any};
  ContourRequest req;
  req.right_families = {{-p.a, {1.0, vstep}, signs, "-a+n1+i n2/tau"},
                        {-p.b, {1.0, vstep}, signs, "-b+n1+i n2/tau"}};
  req.left_families = {{0.0, {1.0}, {IndexSign::nonnegative}, "m"}};
  const Contour path = build_separating_contour(req);
  const Complex pref =
      log_gamma_q_classical(p.c, q) - log_gamma_q_classical(p.a, q) - log_gamma_q_classical(p.b, q);
  auto ratio = [&](Complex s) {
    return log_gamma_q_classical(p.a + s, q) + log_gamma_q_classical(p.b + s, q) -
           log_gamma_q_classical(p.c + s, q) - log_gamma_q_classical(1.0 + s, q);
  };
  return barnes_type(ratio, {ell}, pref, path, cfg).front();
}

}  // namespace qhg
