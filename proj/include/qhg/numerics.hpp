#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhg/core.hpp"

namespace qhg {

// ---------------------------------------------------------------------------
// Branches

/// Admissible wedge for arg(-z), together with the bound on |z|.
struct SectorSpec {
  double arg_min = -kPi;
  double arg_max = kPi;
  double radius_max = 1.0;

  /// Validates -pi <= arg_min < arg_max <= pi and 0 < radius_max <= 1.
  static SectorSpec make(double arg_min, double arg_max, double radius_max = 1.0);

  /// Strict containment: arg_min < arg(-z) < arg_max and |z| < radius_max.
  bool contains(Complex z) const;
};

/// log(-z) on the branch that is real on the negative real axis, Im in (-pi, pi].
Complex log_neg(Complex z, const SectorSpec& sector);

/// (-z)^s := exp(s log(-z)).
Complex neg_pow(Complex s, Complex z, const SectorSpec& sector);

/// log(2 sin x), analytic separately in the upper and the lower half plane.
/// Never overflows for large |Im x|.
Complex log_two_sin(Complex x);

/// pi (-z)^s / sin(pi s).
Complex barnes_kernel(Complex s, Complex z, const SectorSpec& sector);

/// Logarithm of the Barnes kernel, with z given through its log-variable
/// log_neg_z = log(-z). Rotating z by q is then the additive shift
/// log_neg_z -> log_neg_z + log q, with no branch jump.
Complex log_barnes_kernel(Complex s, Complex log_neg_z);

// ---------------------------------------------------------------------------
// Probe circles

using ComplexFunction = std::function<Complex(Complex)>;

/// (1/2 pi i) * contour integral of f over |s - s0| = radius, trapezoidal rule.
Complex residue_probe(const ComplexFunction& f, Complex s0, double radius, int n_points = 128);

/// Net number of zeros minus poles of f inside |s - s0| < radius, from the
/// argument principle with f' by central differences (step radius * 1e-3).
int winding_number(const ComplexFunction& f, Complex s0, double radius, int n_points = 128);

// ---------------------------------------------------------------------------
// Pole families and contours

enum class IndexSign { nonpositive, positive, nonnegative, any };

/// Lattice of poles base + sum_i n_i * steps[i], each n_i constrained by signs[i].
struct PoleFamily {
  Complex base;
  std::vector<Complex> steps;
  std::vector<IndexSign> signs;
  std::string label;

  /// All members inside the box [re_min, re_max] x [im_min, im_max].
  std::vector<Complex> enumerate(double re_min, double re_max, double im_min, double im_max) const;
};

/// Polyline from -i infinity to +i infinity: a vertical ray up to vertices.front(),
/// the finite polyline, then a vertical ray from vertices.back().
struct Contour {
  std::vector<Complex> vertices;
  double abscissa_bottom = 0.0;
  double abscissa_top = 0.0;
  double clearance = 0.0;

  /// Euclidean distance from p to the whole path, rays included.
  double distance_to(Complex p) const;

  /// True when p is on the left (western) side of the upward oriented path.
  bool lies_left(Complex p) const;

  /// True when no two non-adjacent segments intersect.
  bool is_simple() const;

  bool is_straight() const;
};

struct ContourRequest {
  std::vector<PoleFamily> right_families;  // poles that must lie left of the path
  std::vector<PoleFamily> left_families;   // poles that must lie right of the path
  double clearance = 0.05;
  double height = 20.0;
  std::optional<double> preferred_abscissa;
};

/// Builds a path keeping right_families strictly on its left and left_families
/// strictly on its right, at distance >= clearance from every pole with
/// |Im s| <= height + 1. A vertical line is used when one exists; otherwise the
/// path is indented with fingers closed by semicircles of 8 segments.
Contour build_separating_contour(const ContourRequest& request);

Contour build_separating_contour(const std::vector<PoleFamily>& right_families,
                                 const std::vector<PoleFamily>& left_families, double clearance,
                                 double height);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureConfig {
  double abs_tol = 1e-14;
  double rel_tol = 1e-11;
  double max_height = 20.0;
  int max_refinements = 6;
  int panel_order = 15;
  int max_panels = 6000;

  void validate() const;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
};

struct BatchQuadratureResult {
  std::vector<Complex> values;
  std::vector<double> error_estimates;
};

/// Integrand writing dim complex values for one abscissa.
using BatchIntegrand = std::function<void(Complex s, std::span<Complex> out)>;

/// Adaptive Gauss-Kronrod integral of f along the straight segment [a, b].
QuadratureResult segment_integral(const ComplexFunction& f, Complex a, Complex b, double abs_tol,
                                  double rel_tol, int max_panels = 4000,
                                  int initial_panels = 1);

/// Integral of f along the contour from -i infinity to +i infinity.
QuadratureResult contour_integral(const ComplexFunction& f, const Contour& contour,
                                  const QuadratureConfig& cfg);

/// Same as contour_integral for a vector of integrands sharing the abscissae.
BatchQuadratureResult contour_integral(const BatchIntegrand& f, std::size_t dim,
                                       const Contour& contour, const QuadratureConfig& cfg);

}  // namespace qhg
