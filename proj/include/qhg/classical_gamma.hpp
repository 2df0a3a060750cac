#pragma once

#include "qhg/core.hpp"

namespace qhg {

/// log Gamma(z) for complex z by Stirling's series after upward recurrence.
/// The imaginary part follows the recurrence, not the principal branch.
Complex log_gamma(Complex z);

/// Gamma(z); pole error within 1e-12 of a nonpositive integer.
Complex gamma(Complex z);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
Complex rising_factorial(Complex a, int k);

}  // namespace qhg
