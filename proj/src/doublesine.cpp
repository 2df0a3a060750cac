#include "qhg/doublesine.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "qhg/numerics.hpp"

namespace qhg {

const char* to_string(S2Status status) {
  switch (status) {
    case S2Status::regular: return "regular";
    case S2Status::zero: return "zero";
    case S2Status::pole: return "pole";
  }
  return "unknown";
}

OmegaPair OmegaPair::make(double omega1, double omega2) {
  if (!(omega1 > 0.0 && omega2 > 0.0 && std::isfinite(omega1) && std::isfinite(omega2)))
    fail(ErrorKind::domain, "OmegaPair: quasi-periods must be positive and finite");
  return OmegaPair{Complex{omega1, 0.0}, Complex{omega2, 0.0}};
}

OmegaPair OmegaPair::make_complex(Complex omega1, Complex omega2) {
  if (!is_finite(omega1) || !is_finite(omega2) || omega1 == Complex{} || omega2 == Complex{})
    fail(ErrorKind::domain, "OmegaPair: quasi-periods must be nonzero and finite");
  if (!(std::abs(std::arg(omega1) - std::arg(omega2)) < kPi))
    fail(ErrorKind::domain, "OmegaPair: quasi-periods must lie in a common open half plane");
  return OmegaPair{omega1, omega2};
}

// ---------------------------------------------------------------------------
// Double zeta and double gamma

namespace {

// B_{2k} / (2k)!, k = 1..7
constexpr std::array<double, 7> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0};

Complex cpow_neg(Complex x, Complex s) { return std::exp(-s * std::log(x)); }

// Euler-Maclaurin corrections for sum_{m >= 0} f(m), f(m) = (w + m omega)^{-s},
// evaluated at the start point w: the integral, half-endpoint and derivative terms.
struct TailTerms {
  Complex integral, half;
  std::array<Complex, 7> derivative;
};

TailTerms tail_terms(Complex s, Complex w, Complex omega) {
  TailTerms t;
  const Complex p = cpow_neg(w, s);
  t.integral = w * p / (omega * (s - 1.0));
  t.half = 0.5 * p;
  Complex poch = s;  // (s)_{2k-1}
  Complex om = omega;
  Complex wp = p / w;  // w^{-s-1}
  for (int k = 0; k < 7; ++k) {
    t.derivative[k] = kBernoulliOverFactorial[k] * poch * om * wp;
    poch *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    om *= omega * omega;
    wp /= w * w;
  }
  return t;
}

// sum_{m >= 0} (w + m omega)^{-s}, continued in s.
Complex hurwitz_column(Complex s, Complex w, Complex omega, int m_direct) {
  Complex sum{};
  for (int m = 0; m < m_direct; ++m) sum += cpow_neg(w + static_cast<double>(m) * omega, s);
  const TailTerms t = tail_terms(s, w + static_cast<double>(m_direct) * omega, omega);
  sum += t.integral + t.half;
  for (const Complex& d : t.derivative) sum += d;
  return sum;
}

void check_zeta_lattice(Complex z, const OmegaPair& w, int terms) {
  for (int m2 = 0; m2 <= terms; ++m2)
    for (int m1 = 0; m1 <= terms; ++m1)
      if (std::abs(z + static_cast<double>(m1) * w.omega1 + static_cast<double>(m2) * w.omega2) <
          1e-12)
        fail(ErrorKind::pole, "zeta_2: z lies on the lattice -(m1 w1 + m2 w2)");
}

struct Zeta2Pieces {
  Complex value;
  double last_correction;
};

Zeta2Pieces zeta2_pieces(Complex s, Complex z, const OmegaPair& w, int terms) {
  if (terms < 8) fail(ErrorKind::domain, "zeta_2: at least 8 direct terms are required");
  check_zeta_lattice(z, w, terms);
  Complex sum{};
  for (int m2 = 0; m2 < terms; ++m2)
    sum += hurwitz_column(s, z + static_cast<double>(m2) * w.omega2, w.omega1, terms);
  // Rows m2 >= terms: expand each column asymptotically in its start point and
  // sum every power of (z + m2 w2) as a column in the w2 direction.
  const Complex start = z + static_cast<double>(terms) * w.omega2;
  sum += hurwitz_column(s - 1.0, start, w.omega2, terms) / (w.omega1 * (s - 1.0));
  sum += 0.5 * hurwitz_column(s, start, w.omega2, terms);
  Complex poch = s;
  Complex om = w.omega1;
  Complex last{};
  for (int k = 0; k < 7; ++k) {
    last = kBernoulliOverFactorial[k] * poch * om *
           hurwitz_column(s + 2.0 * k + 1.0, start, w.omega2, terms);
    sum += last;
    poch *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    om *= w.omega1 * w.omega1;
  }
  return {sum, std::abs(last)};
}

}  // namespace

Zeta2Result zeta2_direct(Complex s, Complex z, const OmegaPair& w, int terms) {
  if (!(s.real() > 2.0)) fail(ErrorKind::domain, "zeta2_direct requires Re s > 2");
  const auto p = zeta2_pieces(s, z, w, terms);
  return {p.value, p.last_correction, p.last_correction < 1e-8};
}

Complex zeta2_continued(Complex s, Complex z, const OmegaPair& w, int terms) {
  if (std::abs(s - 1.0) < 1e-6 || std::abs(s - 2.0) < 1e-6)
    fail(ErrorKind::pole, "zeta_2 has poles at s = 1 and s = 2");
  return zeta2_pieces(s, z, w, terms).value;
}

Complex log_gamma2(Complex z, const OmegaPair& w, double h) {
  if (!(h > 0.0 && h < 0.2)) fail(ErrorKind::domain, "log_gamma2: step must lie in (0, 0.2)");
  auto f = [&](double t) { return zeta2_continued(Complex{t, 0.0}, z, w); };
  return (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
}

// ---------------------------------------------------------------------------
// Double sine

double s2_ray_angle(const OmegaPair& w) {
  return -0.5 * (std::arg(w.omega1) + std::arg(w.omega2));
}

namespace {

// log(sinh x / x) = sum_n 2^{2n} B_{2n} x^{2n} / (2n (2n)!), |x| <= 1.
constexpr std::array<double, 20> kLogSinhc = {
    1.6666666666666666667e-01, -5.5555555555555555556e-03, 3.5273368606701940035e-04,
    -2.6455026455026455026e-05, 2.1377799155576933355e-06, -1.8036702340053310071e-07,
    1.5661391322766984143e-08, -1.3884130493737299423e-09, 1.2504359176004996030e-10,
    -1.1402575602296091433e-11, 1.0502923908637556408e-12, -9.7548778415937016497e-14,
    9.1234682308590978058e-15, -8.5837197618956093497e-16, 8.1173180097277895770e-17,
    -7.7105275141162733456e-18, 7.3528449327120026411e-19, -7.0361012103906523098e-20,
    6.7538472902174438451e-21, -6.5009241150343183971e-22};

Complex log_sinhc(Complex x) {
  const Complex x2 = x * x;
  Complex p = x2;
  Complex sum{};
  for (double c : kLogSinhc) {
    sum += c * p;
    p *= x2;
  }
  return sum;
}

}  // namespace

Complex log_s2_strip(Complex z, const OmegaPair& w) {
  const double theta = s2_ray_angle(w);
  const Complex rot = std::polar(1.0, theta);
  const Complex zr = z * rot;
  const Complex wr = w.sum() * rot;
  const Complex p1 = w.omega1 * rot;
  const Complex p2 = w.omega2 * rot;
  const Complex a = wr - 2.0 * zr;
  const double d = std::min(zr.real(), (wr - zr).real());
  if (!(d > 0.0) || !is_finite(z))
    fail(ErrorKind::domain, "log_s2_strip: z = " + format_complex(z) + " outside the strip");
  const Complex p12 = p1 * p2;
  const double big = std::max({std::abs(a), std::abs(p1), std::abs(p2)});

  // bracket(r) = sinh(a r/2) / (2 sinh(p1 r/2) sinh(p2 r/2)), written so that
  // nothing overflows for large r.
  auto bracket = [&](double r) {
    return -std::exp(-zr * r) * expm1(-a * r) / (expm1(-p1 * r) * expm1(-p2 * r));
  };
  auto inner = [&](Complex rc) -> Complex {
    const double r = rc.real();
    if (big * r * 0.5 <= 1.0) {
      const Complex l = log_sinhc(0.5 * a * r) - log_sinhc(0.5 * p1 * r) - log_sinhc(0.5 * p2 * r);
      return a * expm1(l) / (p12 * r * r);
    }
    return (bracket(r) - a / (p12 * r)) / r;
  };
  auto outer = [&](Complex rc) -> Complex {
    const double r = rc.real();
    return bracket(r) / r;
  };

  const double freq = std::max({std::abs(zr.imag()), std::abs((wr - zr).imag()),
                                std::abs(p1.imag()), std::abs(p2.imag()), 1e-300});
  const double panel = std::min(1.0, kPi / freq);
  const double scale = 1.0 + std::abs(a / p12);
  const double abs_tol = 1e-15 * scale;
  const double rel_tol = 1e-13;

  const int n_inner = static_cast<int>(std::ceil(1.0 / panel));
  const auto head = segment_integral(inner, 0.0, 1.0, abs_tol, rel_tol, 20000, n_inner);

  // Envelope of the bracket on [1, inf) is about exp(-d r); stop at 1e-18 of it.
  const double denom_floor = std::abs(expm1(-p1)) * std::abs(expm1(-p2));
  const double reach = std::max(1.0, (41.5 + std::log(1.0 + 1.0 / denom_floor)) / d);
  const int n_outer = std::max(1, static_cast<int>(std::ceil((reach - 1.0) / panel)));
  Complex tail{};
  if (reach > 1.0)
    tail = segment_integral(outer, 1.0, reach, abs_tol, rel_tol, 40000, n_outer).value;

  // The integral equals -log S_2 for S_2 = Gamma_2(z)^{-1} Gamma_2(w1 + w2 - z).
  return -(head.value + tail - a / p12);
}

namespace {

// Distance from z to the nearest point -(m1 w1 + m2 w2), m1, m2 >= 0.
bool near_zero_lattice(Complex z, const OmegaPair& w, double u2, double uz, double tol,
                       Complex* hit) {
  if (uz > tol) return false;
  const long m2_max = static_cast<long>(std::floor((-uz + tol) / u2)) + 1;
  for (long m2 = 0; m2 <= m2_max; ++m2) {
    const Complex rest = -z - static_cast<double>(m2) * w.omega2;
    const double guess = (rest / w.omega1).real();
    for (long m1 : {static_cast<long>(std::floor(guess)), static_cast<long>(std::ceil(guess))}) {
      if (m1 < 0) continue;
      const Complex p = -(static_cast<double>(m1) * w.omega1 + static_cast<double>(m2) * w.omega2);
      if (std::abs(z - p) < tol) {
        *hit = p;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

S2Value log_s2(Complex z, const OmegaPair& w) {
  if (!is_finite(z)) fail(ErrorKind::domain, "log_s2: non-finite argument");
  const Complex rot = std::polar(1.0, s2_ray_angle(w));
  auto u = [&](Complex x) { return (x * rot).real(); };

  // Shift along the period with the smaller projection; S_2 is symmetric.
  const OmegaPair p = u(w.omega1) <= u(w.omega2) ? w : w.swapped();
  const double u1 = u(p.omega1);
  const double u2 = u(p.omega2);
  const Complex total = p.sum();
  constexpr double kLatticeTol = 1e-9;

  S2Value out;
  Complex hit;
  if (near_zero_lattice(z, p, u2, u(z), kLatticeTol, &hit)) {
    out.status = S2Status::zero;
    out.lattice_point = hit;
    out.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
    out.value = 0.0;
    return out;
  }
  if (near_zero_lattice(total - z, p, u2, u(total - z), kLatticeTol, &hit)) {
    out.status = S2Status::pole;
    out.lattice_point = total - hit;
    out.log_value = {std::numeric_limits<double>::infinity(), 0.0};
    out.value = {std::numeric_limits<double>::infinity(), 0.0};
    return out;
  }

  const long k = std::lround((0.5 * u(total) - u(z)) / u1);
  Complex acc = log_s2_strip(z + static_cast<double>(k) * p.omega1, p);
  if (k > 0) {
    for (long j = 0; j < k; ++j)
      acc += log_two_sin(kPi * (z + static_cast<double>(j) * p.omega1) / p.omega2);
  } else {
    for (long j = 1; j <= -k; ++j)
      acc -= log_two_sin(kPi * (z - static_cast<double>(j) * p.omega1) / p.omega2);
  }
  out.log_value = acc;
  out.value = std::exp(acc);
  return out;
}

S2Value s2(Complex z, const OmegaPair& w) { return log_s2(z, w); }

}  // namespace qhg
