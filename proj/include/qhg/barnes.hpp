#pragma once

#include <string>
#include <vector>

#include "qhg/core.hpp"
#include "qhg/numerics.hpp"
#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"

namespace qhg {

enum class SeparationClause { real_ordering, imag_separation };

const char* to_string(SeparationClause clause);

/// Validated parameters of the Barnes-type integral with |q| = 1.
struct BarnesProblem {
  HGParams params;
  QModulus q;
  SeparationClause clause = SeparationClause::real_ordering;
  double b2_margin = 0.0;  // 1 - omega Re(a + b - c + 1)
  double delta = 0.0;      // 0 < delta < pi - pi omega Re(a + b - c + 1)
  /// arg(-z) in (-pi + delta, pi - 2 pi omega Re(a + b - c + 1)), |z| < 1.
  SectorSpec sector;
  /// Upper bound on Im log(-z) for which the integral still converges:
  /// pi - 2 pi omega Re(a + b - c - 1). It exceeds the sector bound by
  /// 2 log-q steps, which is what L_q needs.
  double convergence_arg_max = 0.0;
};

/// Checks (B1) Re alpha > Re beta, or Im alpha != Im beta, for alpha in {a, b},
/// beta in {c, 1}; and (B2) omega Re(a + b - c + 1) < 1. delta <= 0 picks
/// min(0.1, half of its admissible range).
BarnesProblem check_conditions_B(const HGParams& p, const QModulus& q, double delta = 0.0);

struct BarnesEvaluation {
  Complex value;
  double error_estimate = 0.0;
  Contour contour_used;
  std::vector<std::string> warnings;
};

/// log of Gt(a+s) Gt(b+s) / (Gt(c+s) Gt(1+s)); -inf real part where a
/// denominator factor has a pole. Pole error near a pole of the numerator.
Complex barnes_gamma_ratio_log(const BarnesProblem& prob, Complex s);

/// The integrand phi(a, b, c; q; s, z) with z given by its log-variable log(-z).
Complex barnes_integrand_log_variable(const BarnesProblem& prob, Complex s, Complex log_neg_z);

/// The integrand phi(a, b, c; q; s, z), z in the sector.
Complex barnes_integrand(const BarnesProblem& prob, Complex s, Complex z);

/// Pole families of the integrand: right families {-a, -b} + n1 + n2/omega
/// (n1, n2 <= 0); left families {-c, -1} + n1 + n2/omega (n1, n2 > 0) and s = m >= 0.
ContourRequest barnes_contour_request(const BarnesProblem& prob, double height = 20.0,
                                      double clearance = 0.05);
Contour build_barnes_contour(const BarnesProblem& prob, double height = 20.0,
                             double clearance = 0.05);

/// log of Gt(c) / (Gt(a) Gt(b)).
Complex barnes_prefactor_log(const BarnesProblem& prob);

/// Phi(a, b, c; q, z) for z in the sector.
BarnesEvaluation capital_phi(const BarnesProblem& prob, Complex z, const QuadratureConfig& cfg = {},
                             const Contour* contour = nullptr);

/// Phi at several log-variables ell_j = log(-z_j) sharing one contour. Each
/// Im ell_j must lie in (-pi, convergence_arg_max).
std::vector<BarnesEvaluation> capital_phi_log_variable(const BarnesProblem& prob,
                                                       const std::vector<Complex>& ells,
                                                       const QuadratureConfig& cfg = {},
                                                       const Contour* contour = nullptr);

/// Classical Barnes integral with Euler gamma functions; z in -pi + delta <
/// arg(-z) < pi - delta, |z| < 1.
BarnesEvaluation classical_barnes(const HGParams& p, Complex z, const QuadratureConfig& cfg = {},
                                  double delta = 0.05);

/// Watson's integral with classical q-gamma functions, 0 < q < 1. Right
/// families -a + n1 + i n2 / tau, -b + n1 + i n2 / tau (n1 <= 0, n2 in Z).
BarnesEvaluation watson_integral(const HGParams& p, const QModulus& q, Complex z,
                                 const QuadratureConfig& cfg = {}, double delta = 0.05);

}  // namespace qhg
