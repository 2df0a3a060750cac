#pragma once

#include <string>
#include <vector>

#include "qhg/barnes.hpp"
#include "qhg/core.hpp"
#include "qhg/numerics.hpp"
#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"

namespace qhg {

/// Parameters of the Euler-type integral with |q| = 1.
/// (E1) b - c not in R_{>0}, (E2) a not in R_{<0} are hard requirements;
/// (E3) Re b > 0, Re(a - c - 1) > 0 only governs convergence and is reported.
struct EulerProblem {
  HGParams params;
  QModulus q;
  bool e3_holds = true;
  std::vector<std::string> warnings;
};

EulerProblem check_conditions_E(const HGParams& p, const QModulus& q);

/// Gt(s+x) Gt(s+c-b) / (Gt(s+x+a) Gt(s+1)) q^{bs}, assembled in log space.
Complex psi_integrand_log(const EulerProblem& prob, Complex s, Complex x);
Complex psi_integrand(const EulerProblem& prob, Complex s, Complex x);

/// Right families -x + n1 + n2/omega, b - c + n1 + n2/omega (n1, n2 <= 0);
/// left families -x - a + n1 + n2/omega, -1 + n1 + n2/omega (n1, n2 > 0).
ContourRequest euler_contour_request(const EulerProblem& prob, Complex x, double height = 20.0,
                                     double clearance = 0.05);
Contour build_euler_contour(const EulerProblem& prob, Complex x, double height = 20.0,
                            double clearance = 0.05);

/// Psi(a, b, c; q, x), x not in R_{<0}; no normalising prefactor.
BarnesEvaluation capital_psi(const EulerProblem& prob, Complex x, const QuadratureConfig& cfg = {},
                             const Contour* contour = nullptr);

/// Jackson integral (1 - q) sum_{n >= 0} q^n f(q^n), 0 < q < 1. Stops after three
/// consecutive terms below tail_tol * |sum|; divergence error after max_terms.
Complex jackson_integral(const std::function<Complex(Complex)>& f, const QModulus& q,
                         double tail_tol = 1e-17, long max_terms = 10000000);

/// phi(q^a, q^b, q^c; q, z) from its Euler-type Jackson integral
///   Gq(c) / (Gq(b) Gq(c-b)) int_0^1 t^b (t z q^a; q)_inf (t q; q)_inf
///                                  / ((t z; q)_inf (t q^{c-b}; q)_inf) d_q t / t.
Complex euler_jackson_phi(const HGParams& p, const QModulus& q, Complex z,
                          double tail_tol = 1e-17);

}  // namespace qhg
