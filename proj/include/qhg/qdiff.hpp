#pragma once

#include <functional>

#include "qhg/core.hpp"
#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"

namespace qhg {

using SampledFunction = std::function<Complex(Complex)>;

/// How well a function is annihilated by a difference operator at one point.
struct ResidualReport {
  Complex residual;
  double scale = 0.0;       // max magnitude of the operator's two composite parts
  double normalized = 0.0;  // |residual| / scale
  Complex point;
};

Complex apply_Tq(const SampledFunction& f, Complex z, const QModulus& q);

/// (f(z) - f(qz)) / ((1 - q) z).
Complex apply_Dq(const SampledFunction& f, Complex z, const QModulus& q);

/// [theta + a] f = (f(z) - q^a f(qz)) / (1 - q).
Complex apply_theta_bracket(const SampledFunction& f, Complex z, const QModulus& q, Complex a);

/// L_q = z^{-1} [theta][theta + c - 1] - [theta + a][theta + b] from the samples
/// f(z), f(qz), f(q^2 z).
ResidualReport lq_from_samples(Complex f0, Complex f1, Complex f2, const HGParams& p, Complex z,
                               const QModulus& q);

ResidualReport apply_Lq(const SampledFunction& f, const HGParams& p, Complex z,
                        const QModulus& q);

/// L_q for a function given through the log-variable ell = log(-z). The
/// rotation z -> qz is the shift ell -> ell + log q, so no branch cut is crossed.
ResidualReport apply_Lq_log(const SampledFunction& f_of_ell, const HGParams& p, Complex ell,
                            const QModulus& q);

/// L_+ = q^{-x} [theta]_+ [theta + c - 1]_+ - [theta + a]_+ [theta + b]_+ from the
/// samples g(x), g(x+1), g(x+2).
ResidualReport lplus_from_samples(Complex g0, Complex g1, Complex g2, const HGParams& p, Complex x,
                                  const QModulus& q);

ResidualReport apply_Lplus(const SampledFunction& g, const HGParams& p, Complex x,
                           const QModulus& q);

struct ExpandedCheck {
  ResidualReport factored;
  ResidualReport expanded;
  double deviation = 0.0;  // |expanded - factored| / factored scale
};

/// The second-order expanded form
///   z (q^c - q^{a+b+1} z) D_q^2 - {[c] - ((1-q^a)(1-q^b) - (1-q^{a+b+1})) z / (1-q)} D_q - [a][b]
/// evaluated verbatim and compared with the factored operator.
ExpandedCheck expanded_Lq_crosscheck(const SampledFunction& f, const HGParams& p, Complex z,
                                     const QModulus& q);

/// The expanded form of L_+ in powers of T_+, compared with the factored operator.
ExpandedCheck expanded_Lplus_crosscheck(const SampledFunction& g, const HGParams& p, Complex x,
                                        const QModulus& q);

}  // namespace qhg
