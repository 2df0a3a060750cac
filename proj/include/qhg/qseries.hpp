#pragma once

#include <vector>

#include "qhg/core.hpp"
#include "qhg/qgamma.hpp"

namespace qhg {

/// Hypergeometric parameters (a, b, c).
struct HGParams {
  Complex a, b, c;
};

struct SeriesConfig {
  int max_terms = 20000;
  double tail_tol = 1e-17;

  void validate() const;
};

struct SeriesResult {
  Complex value;
  int terms = 0;
  bool converged = true;  // false when max_terms was reached first
};

/// F(a, b, c; z) = sum (a)_k (b)_k / ((c)_k k!) z^k with rising factorials, |z| < 1.
SeriesResult hypergeometric_f(const HGParams& p, Complex z, const SeriesConfig& cfg = {});

/// phi(q^a, q^b, q^c; q, z) = sum (q^a;q)_k (q^b;q)_k / ((q^c;q)_k (q;q)_k) z^k
/// for 0 < q < 1 and |z| < 1.
SeriesResult basic_phi(const HGParams& p, const QModulus& q, Complex z,
                       const SeriesConfig& cfg = {});

/// First n coefficients of the (formal, for |q| = 1) basic hypergeometric series.
std::vector<Complex> formal_phi_coefficients(const HGParams& p, const QModulus& q, int n);

/// sum_{k < coeffs.size()} coeffs[k] z^k.
Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z);

}  // namespace qhg
