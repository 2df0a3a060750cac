#pragma once

#include "qhg/core.hpp"
#include "qhg/doublesine.hpp"

namespace qhg {

enum class QRegime { unit, classical };

/// q = exp(2 pi i omega) on the unit circle or q = exp(-2 pi tau) in (0, 1).
/// Powers are always q^z := exp(z log_q).
class QModulus {
 public:
  static constexpr double kDefaultGuard = 0.05;

  /// Unit regime. Rejects omega within guard / r^2 of a rational p / r with
  /// r <= 40; guard = 0 switches the check off.
  static QModulus unit(double omega, double guard = kDefaultGuard);
  static QModulus classical(double tau);
  /// Classical regime from q itself, 0 < q < 1.
  static QModulus classical_from_q(double q);

  QRegime regime() const { return regime_; }
  bool is_unit() const { return regime_ == QRegime::unit; }
  double omega() const { return omega_; }
  double tau() const { return tau_; }
  Complex log_q() const { return log_q_; }
  Complex q() const { return std::exp(log_q_); }
  Complex pow(Complex z) const { return std::exp(z * log_q_); }

  /// Quasi-periods (1, 1/omega) of the double sine behind the q-gamma; in the
  /// classical regime omega is replaced by i tau.
  OmegaPair periods() const;

  /// Closest rational p / r (r <= 40) to omega and its scaled distance r^2 |omega - p/r|.
  struct RationalApproach {
    long p = 0, r = 1;
    double scaled_distance = 0.0;
  };
  static RationalApproach nearest_rational(double omega, int max_denominator = 40);

 private:
  QRegime regime_ = QRegime::unit;
  double omega_ = 0.0;
  double tau_ = 0.0;
  Complex log_q_;
};

/// [z] = (1 - q^z) / (1 - q).
Complex q_bracket(Complex z, const QModulus& q);

/// log of the modular q-gamma
///   (q-1)^{1-z} i^{z-1} q^{z(z-1)/4} / S_2(z | (1, 1/omega))
/// with (q-1)^{1-z} from the principal Log(q-1), i^{z-1} = exp(i pi (z-1)/2)
/// and q^{z(z-1)/4} = exp(log_q z(z-1)/4). Zeros sit at n1 + n2/omega
/// (n1, n2 > 0), poles at n1 + n2/omega (n1, n2 <= 0). In the unit regime
/// log_value is continuous on the plane cut along (-inf, 0] and [1 + 1/omega, inf).
S2Value gamma_tilde(Complex z, const QModulus& q);

/// The elementary prefactor of gamma_tilde in log form.
Complex gamma_tilde_prefactor_log(Complex z, const QModulus& q);

/// log of (q;q)_inf / (q^z;q)_inf (1-q)^{1-z}, classical regime only.
Complex log_gamma_q_classical(Complex z, const QModulus& q);
Complex gamma_q_classical(Complex z, const QModulus& q);

/// (a;q)_k = prod_{l=0}^{k-1} (1 - a q^l); (a;q)_0 = 1.
Complex q_pochhammer(Complex a, const QModulus& q, int k);

/// (a;q)_inf and its logarithm (sum of principal log1p terms), classical regime.
Complex q_pochhammer_inf(Complex a, const QModulus& q);
Complex log_q_pochhammer_inf(Complex a, const QModulus& q);

enum class ImSign { positive = 1, negative = -1 };

/// Main term of log gamma_tilde for large |Im z|:
///   (1-z) Log(q-1) + (z-1) log i + z(z-1)/4 log q -+ pi i (omega z^2/2 - (omega+1) z/2),
/// upper sign for Im z > 0.
Complex asymptotic_main_term(Complex z, const QModulus& q, ImSign sign);

}  // namespace qhg
