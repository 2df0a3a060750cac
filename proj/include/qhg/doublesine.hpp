#pragma once

#include "qhg/core.hpp"

namespace qhg {

/// Quasi-periods of the double functions. Both positive reals, or (for the
/// classical-regime q-gamma) complex numbers lying in a common open half plane.
struct OmegaPair {
  Complex omega1{1.0, 0.0};
  Complex omega2{1.0, 0.0};

  /// Positive real periods.
  static OmegaPair make(double omega1, double omega2);
  /// Complex periods with |arg omega1 - arg omega2| < pi.
  static OmegaPair make_complex(Complex omega1, Complex omega2);

  Complex sum() const { return omega1 + omega2; }
  OmegaPair swapped() const { return OmegaPair{omega2, omega1}; }
  bool is_real() const { return omega1.imag() == 0.0 && omega2.imag() == 0.0; }
};

enum class S2Status { regular, zero, pole };

const char* to_string(S2Status status);

struct S2Value {
  Complex log_value;
  Complex value;
  S2Status status = S2Status::regular;
  Complex lattice_point;  // responsible lattice point for zero/pole statuses
};

struct Zeta2Result {
  Complex value;
  double tail_bound = 0.0;  // size of the last asymptotic correction
  bool accurate = true;     // tail_bound < 1e-8
};

/// zeta_2(s, z | w) = sum over m1, m2 >= 0 of (z + m1 w1 + m2 w2)^{-s}, Re s > 2.
/// The first `terms` rows and columns are summed directly; both remaining
/// tails are handled by Euler-Maclaurin.
Zeta2Result zeta2_direct(Complex s, Complex z, const OmegaPair& w, int terms = 30);

/// Same double sum continued analytically to every s != 1, 2.
Complex zeta2_continued(Complex s, Complex z, const OmegaPair& w, int terms = 30);

/// log Gamma_2(z | w) = d/ds zeta_2(s, z | w) at s = 0, by a fourth-order
/// central difference of the continued zeta_2 with step h. Oracle quality.
Complex log_gamma2(Complex z, const OmegaPair& w, double h = 1e-2);

/// Raw integral representation of log S_2, valid only in the band
/// 0 < Re(z e^{i theta}) < Re((w1 + w2) e^{i theta}) with theta the ray angle.
Complex log_s2_strip(Complex z, const OmegaPair& w);

/// Angle of the integration ray used by log_s2_strip.
double s2_ray_angle(const OmegaPair& w);

/// log S_2(z | w) on the whole plane: the strip integral extended by the shift
/// relation S_2(z + w1) = S_2(z) / (2 sin(pi z / w2)).
S2Value log_s2(Complex z, const OmegaPair& w);

/// Same as log_s2 with value = exp(log_value) filled in.
S2Value s2(Complex z, const OmegaPair& w);

}  // namespace qhg
