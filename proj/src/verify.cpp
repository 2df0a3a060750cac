#include "qhg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "qhg/barnes.hpp"
#include "qhg/doublesine.hpp"
#include "qhg/euler.hpp"
#include "qhg/numerics.hpp"
#include "qhg/parallel.hpp"
#include "qhg/qdiff.hpp"
#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"

namespace qhg {

namespace {

using Rng = std::mt19937_64;

// Independent stream per check so results do not depend on scheduling.
Rng rng_for(const VerifyOptions& o, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

double uniform(Rng& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

// |exp(x) - 1|: x compared with 0 modulo 2 pi i.
double mod_2pi_i(Complex x) { return std::abs(expm1(principal_log_class(x))); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

const OmegaPair kPairs[] = {OmegaPair::make(1.0, 2.0), OmegaPair::make(1.0, 1.618),
                            OmegaPair::make(1.0, 2.414)};

// 100 points in the disk |z - W/2| < W for each period pair.
std::vector<Complex> disk_points(Rng& g, const OmegaPair& w, int n) {
  const Complex center = 0.5 * w.sum();
  const double r = std::abs(w.sum());
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex z = center + r * Complex{uniform(g, -1, 1), uniform(g, -1, 1)};
    if (std::abs(z - center) < r) out.push_back(z);
  }
  return out;
}

CheckOutcome s2_reflection(const VerifyOptions& o) {
  Rng g = rng_for(o, 1);
  double worst = 0.0;
  for (const auto& w : kPairs)
    for (Complex z : disk_points(g, w, 100))
      worst = std::max(worst, mod_2pi_i(log_s2(z, w).log_value + log_s2(w.sum() - z, w).log_value));
  return {worst, "300 points, 3 period pairs"};
}

CheckOutcome s2_shift(const VerifyOptions& o) {
  Rng g = rng_for(o, 2);
  double worst = 0.0;
  int used = 0;
  for (const auto& w : kPairs)
    for (Complex z : disk_points(g, w, 100)) {
      if (std::abs(std::sin(kPi * z / w.omega2)) < 1e-3) continue;
      ++used;
      worst = std::max(worst, mod_2pi_i(log_s2(z + w.omega1, w).log_value - log_s2(z, w).log_value +
                                        log_two_sin(kPi * z / w.omega2)));
    }
  return {worst, std::to_string(used) + " points, 3 period pairs"};
}

CheckOutcome s2_swap(const VerifyOptions& o) {
  Rng g = rng_for(o, 3);
  double worst = 0.0;
  for (const auto& w : kPairs)
    for (Complex z : disk_points(g, w, 30))
      worst = std::max(worst, mod_2pi_i(log_s2(z, w).log_value - log_s2(z, w.swapped()).log_value));
  return {worst, "90 points"};
}

CheckOutcome s2_gamma2(const VerifyOptions& o) {
  Rng g = rng_for(o, 4);
  const auto w = OmegaPair::make(1.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex z{uniform(g, 0.3, 2.7), uniform(g, -0.5, 0.5)};
    worst = std::max(worst, mod_2pi_i(log_gamma2(w.sum() - z, w) - log_gamma2(z, w) -
                                      log_s2_strip(z, w)));
  }
  return {worst, "10 strip points, periods (1, 2)"};
}

double lattice_distance(Complex z, double omega) {
  double best = std::numeric_limits<double>::infinity();
  for (int n1 = -12; n1 <= 12; ++n1)
    for (int n2 = -12; n2 <= 12; ++n2)
      if ((n1 > 0) == (n2 > 0)) best = std::min(best, std::abs(z - (n1 + n2 / omega)));
  return best;
}

CheckOutcome qgamma_functional(const VerifyOptions& o) {
  Rng g = rng_for(o, 5);
  double worst = 0.0;
  for (double omega : {std::sqrt(2.0) - 1.0, (std::sqrt(5.0) - 1.0) / 2.0, 0.3010299957}) {
    const auto q = QModulus::unit(omega);
    int n = 0;
    while (n < 50) {
      const Complex z{uniform(g, -3, 3), uniform(g, -3, 3)};
      if (std::abs(z) > 3.0 || lattice_distance(z, omega) < 0.05 ||
          lattice_distance(z + 1.0, omega) < 0.05)
        continue;
      ++n;
      const Complex ratio = std::exp(gamma_tilde(z + 1.0, q).log_value - gamma_tilde(z, q).log_value);
      worst = std::max(worst, std::abs(ratio / q_bracket(z, q) - 1.0));
    }
  }
  return {worst, "50 points x 3 omega"};
}

CheckOutcome qgamma_census(const VerifyOptions&) {
  const double omega = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto q = QModulus::unit(omega);
  auto f = [&](Complex z) { return gamma_tilde(z, q).value; };
  struct Point {
    Complex z;
    int order;
  };
  std::vector<Point> lattice;
  for (int n1 = -12; n1 <= 12; ++n1)
    for (int n2 = -12; n2 <= 12; ++n2)
      if ((n1 > 0) == (n2 > 0)) lattice.push_back({n1 + n2 / omega, n1 > 0 ? 1 : -1});

  int mismatches = 0, points = 0, circles = 0;
  for (const auto& p : lattice) {
    if (std::abs(p.z) > 4.0) continue;
    ++points;
    if (winding_number(f, p.z, 0.1) != p.order) ++mismatches;
  }
  const double r = 0.36;  // covers the plane with a 0.5 grid
  for (int i = -8; i <= 8; ++i)
    for (int j = -8; j <= 8; ++j) {
      const Complex c{0.5 * i, 0.5 * j};
      if (std::abs(c) > 4.0 + r) continue;
      int expected = 0;
      bool grazing = false;
      for (const auto& p : lattice) {
        const double d = std::abs(c - p.z);
        if (std::abs(d - r) < 0.05) grazing = true;
        if (d < r) expected += p.order;
      }
      if (grazing) continue;
      ++circles;
      if (winding_number(f, c, r) != expected) ++mismatches;
    }
  return {static_cast<double>(mismatches),
          std::to_string(points) + " lattice points, " + std::to_string(circles) +
              " scan circles; deviation counts mismatches"};
}

CheckOutcome qgamma_periodicity(const VerifyOptions& o) {
  Rng g = rng_for(o, 6);
  double worst = 0.0;
  for (double tau : {0.1, 0.25}) {
    const auto q = QModulus::classical(tau);
    for (int k = 0; k < 10; ++k) {
      const Complex z{uniform(g, 0.1, 0.9), uniform(g, -0.3, 0.3)};
      const Complex r0 = gamma_tilde(z, q).log_value - log_gamma_q_classical(z, q);
      const Complex r1 = gamma_tilde(z + 1.0, q).log_value - log_gamma_q_classical(z + 1.0, q);
      worst = std::max(worst, mod_2pi_i(r1 - r0));
    }
  }
  return {worst, "tau in {0.1, 0.25}, 10 points each, quasi-periods (1, -i/tau)"};
}

CheckOutcome qgamma_asymptotics(const VerifyOptions&) {
  const auto q = QModulus::unit(0.4142);
  double worst_ratio = 0.0;
  std::string detail = "|deviation| at Y = 5, 10, 20, 40:";
  for (ImSign sign : {ImSign::positive, ImSign::negative}) {
    const double s = sign == ImSign::positive ? 1.0 : -1.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double y : {5.0, 10.0, 20.0, 40.0}) {
      const Complex z{0.0, s * y};
      const double d =
          std::abs(principal_log_class(gamma_tilde(z, q).log_value - asymptotic_main_term(z, q, sign)));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      detail += " " + fmt(d);
    }
    worst_ratio = std::max(worst_ratio, hi / lo);
  }
  return {worst_ratio, detail + "; deviation is the max/min ratio"};
}

CheckOutcome kernel_residues(const VerifyOptions&) {
  const auto sec = SectorSpec::make(-3.0, 3.0);
  double worst = 0.0;
  for (Complex z : {Complex{-0.5, 0.0}, Complex{-0.25, 0.0}, Complex{0.3, 0.1}})
    for (int k = 0; k <= 3; ++k) {
      const Complex r = residue_probe([&](Complex s) { return barnes_kernel(s, z, sec); }, k, 0.25);
      worst = std::max(worst, std::abs(r - std::pow(z, k)));
    }
  return {worst, "s = 0..3, 3 values of z"};
}

CheckOutcome oracle_classical(const VerifyOptions& o) {
  Rng g = rng_for(o, 7);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const HGParams p{uniform(g, 0.5, 2.0), uniform(g, 0.5, 2.0), uniform(g, 1.0, 3.0)};
    const Complex z = -std::polar(uniform(g, 0.1, 0.5), uniform(g, -2.0, 2.0));
    worst = std::max(worst, std::abs(classical_barnes(p, z).value - hypergeometric_f(p, z).value));
  }
  return {worst, "3 parameter draws, |z| <= 0.5"};
}

CheckOutcome oracle_watson(const VerifyOptions& o) {
  Rng g = rng_for(o, 8);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const HGParams p{uniform(g, 0.5, 2.0), uniform(g, 0.5, 2.0), uniform(g, 1.0, 3.0)};
    const auto q = QModulus::classical_from_q(uniform(g, 0.2, 0.6));
    const Complex z = -std::polar(uniform(g, 0.1, 0.5), uniform(g, -2.0, 2.0));
    worst = std::max(worst, std::abs(watson_integral(p, q, z).value - basic_phi(p, q, z).value));
  }
  return {worst, "3 parameter draws, |z| <= 0.5"};
}

CheckOutcome oracle_jackson(const VerifyOptions& o) {
  Rng g = rng_for(o, 9);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double b = uniform(g, 0.5, 2.0);
    const HGParams p{uniform(g, 0.5, 2.0), b, b + uniform(g, 0.3, 2.0)};
    const auto q = QModulus::classical_from_q(uniform(g, 0.2, 0.6));
    const Complex z = std::polar(uniform(g, 0.0, 0.5), uniform(g, -kPi, kPi));
    worst = std::max(worst, std::abs(euler_jackson_phi(p, q, z) - basic_phi(p, q, z).value));
  }
  return {worst, "3 parameter draws, |z| <= 0.5"};
}

CheckOutcome qdiff_monomials(const VerifyOptions& o) {
  Rng g = rng_for(o, 10);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const HGParams p{Complex{uniform(g, 0.2, 2.5), uniform(g, -1, 1)}, uniform(g, 0.2, 2.5),
                     Complex{uniform(g, 0.2, 2.5), uniform(g, -0.3, 0.3)}};
    const Complex z = std::polar(uniform(g, 0.05, 0.5), uniform(g, -kPi, kPi));
    for (const QModulus& q : {QModulus::unit(uniform(g, 0.15, 0.85), 0.0),
                              QModulus::classical(uniform(g, 0.05, 1.0))})
      for (int k = 0; k <= 10; ++k) {
        const double kd = k;
        const auto r = apply_Lq([k](Complex w) { return std::pow(w, k); }, p, z, q);
        const Complex expected =
            q_bracket(k, q) * q_bracket(kd + p.c - 1.0, q) * std::pow(z, k - 1) -
            q_bracket(kd + p.a, q) * q_bracket(kd + p.b, q) * std::pow(z, k);
        worst = std::max(worst, std::abs(r.residual - expected) / std::max(std::abs(expected), r.scale));
      }
  }
  return {worst, "k = 0..10, 20 draws, both regimes"};
}

CheckOutcome qdiff_basic_phi(const VerifyOptions& o) {
  Rng g = rng_for(o, 11);
  const auto q = QModulus::classical_from_q(0.4);
  const HGParams p{1.2, 0.8, 2.3};
  auto phi = [&](Complex z) { return basic_phi(p, q, z).value; };
  double worst = 0.0;
  for (int k = 0; k < 20; ++k)
    worst = std::max(worst, apply_Lq(phi, p, std::polar(uniform(g, 0.01, 0.5), uniform(g, -kPi, kPi)), q)
                                .normalized);
  return {worst, "20 points |z| <= 0.5, q = 0.4"};
}

CheckOutcome qdiff_substitution(const VerifyOptions& o) {
  Rng g = rng_for(o, 12);
  const auto q = QModulus::classical_from_q(0.4);
  const HGParams p{1.2, 0.8, 2.3};
  auto phi = [&](Complex z) { return basic_phi(p, q, z).value; };
  auto gx = [&](Complex x) { return phi(q.pow(x)); };
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex x{uniform(g, 1.0, 3.0), uniform(g, -2.0, 2.0)};
    const auto plus = apply_Lplus(gx, p, x, q);
    const auto mult = apply_Lq(phi, p, q.pow(x), q);
    worst = std::max(worst, std::abs(plus.residual - mult.residual) / mult.scale);
  }
  return {worst, "10 points, z = q^x"};
}

const HGParams kBarnesParams{2.3, 2.7, 1.1};
const double kBarnesOmegas[] = {0.0618034, 0.0732051, 0.0854102};

CheckOutcome barnes_contiguous(const VerifyOptions& o) {
  Rng g = rng_for(o, 13);
  const auto q = QModulus::unit(kBarnesOmegas[0]);
  const Complex lq = q.log_q();
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    const HGParams p{uniform(g, 1.5, 3.0), uniform(g, 1.5, 3.0), uniform(g, 0.5, 1.4)};
    const BarnesProblem prob = check_conditions_B(p, q);
    BarnesProblem up = prob;
    up.params = {p.a + 1.0, p.b + 1.0, p.c};
    for (int k = 0; k < 20; ++k) {
      const Complex s{uniform(g, -0.45, 0.45), uniform(g, -3.0, 3.0)};
      const Complex ell{std::log(uniform(g, 0.05, 0.9)), uniform(g, -2.5, 1.0)};
      auto f = [&](Complex l) { return barnes_integrand_log_variable(prob, s, l); };
      const auto rep = lq_from_samples(f(ell), f(ell + lq), f(ell + 2.0 * lq), p, -std::exp(ell), q);
      const Complex rhs = barnes_integrand_log_variable(up, s - 1.0, ell) -
                          barnes_integrand_log_variable(up, s, ell);
      worst = std::max(worst, std::abs(rep.residual - rhs) / rep.scale);
    }
  }
  return {worst, "20 (s, z) samples x 5 parameter draws"};
}

CheckOutcome barnes_theorem(const VerifyOptions&) {
  const Complex zs[] = {Complex{-0.4, 0.0}, Complex{-0.25, 0.1}, Complex{-0.15, -0.05}};
  double worst = 0.0;
  for (double omega : kBarnesOmegas) {
    const auto q = QModulus::unit(omega);
    const auto prob = check_conditions_B(kBarnesParams, q);
    std::vector<Complex> ells;
    for (Complex z : zs) {
      const Complex ell = log_neg(z, prob.sector);
      for (int k = 0; k < 3; ++k) ells.push_back(ell + static_cast<double>(k) * q.log_q());
    }
    const auto v = capital_phi_log_variable(prob, ells);
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, lq_from_samples(v[3 * j].value, v[3 * j + 1].value,
                                              v[3 * j + 2].value, kBarnesParams, zs[j], q)
                                  .normalized);
  }
  return {worst, "3 omega x 3 z, (a, b, c) = (2.3, 2.7, 1.1)"};
}

CheckOutcome barnes_deformation(const VerifyOptions&) {
  double worst = 0.0;
  for (double omega : kBarnesOmegas) {
    const auto prob = check_conditions_B(kBarnesParams, QModulus::unit(omega));
    auto req = barnes_contour_request(prob);
    const Contour base = build_separating_contour(req);
    const auto ref = capital_phi(prob, -0.4, {}, &base);
    for (double dx : {-0.1, 0.1}) {
      req.preferred_abscissa = base.abscissa_bottom + dx;
      const Contour moved = build_separating_contour(req);
      const auto other = capital_phi(prob, -0.4, {}, &moved);
      worst = std::max(worst, std::abs(other.value - ref.value) /
                                  (other.error_estimate + ref.error_estimate));
    }
  }
  return {worst, "abscissa shifted by +-0.1 at 3 omega; deviation is |difference| / (sum of error estimates)"};
}

const HGParams kEulerParams{3.5, Complex{1.2, 0.5}, 1.0};
const double kEulerOmegas[] = {0.3010299957, 0.2360679775};
const Complex kEulerX[] = {Complex{0.7, 0.0}, Complex{0.3, 0.4}, Complex{1.2, 0.0},
                           Complex{0.5, -0.3}, Complex{2.0, 0.5}};

CheckOutcome euler_theorem(const VerifyOptions&) {
  std::vector<double> res(std::size(kEulerOmegas) * std::size(kEulerX));
  parallel_for(res.size(), [&](std::size_t i) {
    const auto prob = check_conditions_E(kEulerParams, QModulus::unit(kEulerOmegas[i / std::size(kEulerX)]));
    const Complex x = kEulerX[i % std::size(kEulerX)];
    Complex g[3];
    for (int k = 0; k < 3; ++k) g[k] = capital_psi(prob, x + static_cast<double>(k)).value;
    res[i] = lplus_from_samples(g[0], g[1], g[2], kEulerParams, x, prob.q).normalized;
  });
  return {*std::max_element(res.begin(), res.end()), "5 x x 2 omega, (a, b, c) = (3.5, 1.2+0.5i, 1)"};
}

CheckOutcome euler_deformation(const VerifyOptions&) {
  double worst = 0.0;
  for (double omega : kEulerOmegas) {
    const auto prob = check_conditions_E(kEulerParams, QModulus::unit(omega));
    const Complex x = 0.7;
    auto req = euler_contour_request(prob, x);
    const Contour base = build_separating_contour(req);
    req.preferred_abscissa = base.abscissa_bottom + 0.15;
    req.clearance = 0.1;
    const Contour other = build_separating_contour(req);
    const auto r1 = capital_psi(prob, x, {}, &base);
    const auto r2 = capital_psi(prob, x, {}, &other);
    worst = std::max(worst, std::abs(r1.value - r2.value) / (r1.error_estimate + r2.error_estimate));
  }
  return {worst, "two admissible contours at x = 0.7, 2 omega; deviation is |difference| / (sum of error estimates)"};
}

std::vector<CheckDef> make_registry() {
  return {
      {"s2.reflection", "doublesine", "double sine reflection S2(z) S2(w1 + w2 - z) = 1", 1e-9, s2_reflection},
      {"s2.shift", "doublesine", "double sine quasi-periodicity S2(z + w1) / S2(z) = 1 / (2 sin(pi z / w2))", 1e-9, s2_shift},
      {"s2.swap", "doublesine", "double sine symmetric in its two periods", 1e-9, s2_swap},
      {"s2.double-gamma", "doublesine", "double sine as Gamma2(w1 + w2 - z) / Gamma2(z)", 1e-5, s2_gamma2},
      {"qgamma.functional-equation", "qgamma", "modular q-gamma functional equation Gt(z + 1) = [z] Gt(z)", 1e-9, qgamma_functional},
      {"qgamma.zero-pole-census", "qgamma", "modular q-gamma zeros at n1 + n2/omega (n1, n2 > 0), poles at n1 + n2/omega (n1, n2 <= 0)", 0.5, qgamma_census},
      {"qgamma.classical-periodicity", "qgamma", "classical-regime modular q-gamma over classical q-gamma is 1-periodic", 1e-8, qgamma_periodicity},
      {"qgamma.asymptotics", "qgamma", "modular q-gamma equals its quadratic main term up to O(1) for large |Im z|", 3.0, qgamma_asymptotics},
      {"kernel.residues", "numerics", "residue of pi (-z)^s / sin(pi s) at s = k is z^k", 1e-10, kernel_residues},
      {"qdiff.monomial-calculus", "qdiff", "L_q z^k = [k][k + c - 1] z^(k-1) - [k + a][k + b] z^k", 1e-11, qdiff_monomials},
      {"qdiff.series-annihilated", "qdiff", "L_q annihilates the basic hypergeometric series", 1e-8, qdiff_basic_phi},
      {"qdiff.additive-variable", "qdiff", "L_+ on g(x) = f(q^x) equals L_q on f", 1e-10, qdiff_substitution},
      {"barnes.contiguous-relation", "barnes", "L_q of the Barnes integrand is a difference in s of the integrand with a + 1, b + 1", 1e-8, barnes_contiguous},
      {"barnes.q-difference-equation", "barnes", "Barnes-type integral Phi satisfies L_q Phi = 0", 1e-6, barnes_theorem},
      {"barnes.contour-deformation", "barnes", "Barnes-type integral is independent of the separating contour", 1.0, barnes_deformation},
      {"euler.q-difference-equation", "euler", "Euler-type integral Psi satisfies L_+ Psi = 0", 1e-6, euler_theorem},
      {"euler.contour-deformation", "euler", "Euler-type integral is independent of the separating contour", 1.0, euler_deformation},
      {"oracle.classical-barnes", "oracles", "classical Barnes integral equals the hypergeometric series", 1e-8, oracle_classical},
      {"oracle.watson", "oracles", "Watson's integral equals the basic hypergeometric series", 1e-6, oracle_watson},
      {"oracle.euler-jackson", "oracles", "Euler-type Jackson integral equals the basic hypergeometric series", 1e-8, oracle_jackson},
  };
}

}  // namespace

const std::vector<CheckDef>& all_checks() {
  static const std::vector<CheckDef> registry = make_registry();
  return registry;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& c : all_checks())
    if (std::find(out.begin(), out.end(), c.suite) == out.end()) out.push_back(c.suite);
  out.push_back("all");
  return out;
}

bool is_suite(const std::string& name) {
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CheckRecord run_check(const CheckDef& def, const VerifyOptions& opts) {
  CheckRecord r;
  r.check_id = def.id;
  r.suite = def.suite;
  r.paper_anchor = def.anchor;
  r.tolerance = def.tolerance * opts.tolerance_scale;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const CheckOutcome out = def.run(opts);
    r.max_deviation = out.max_deviation;
    r.detail = out.detail;
    r.pass = out.max_deviation < r.tolerance;
  } catch (const std::exception& e) {
    r.max_deviation = std::numeric_limits<double>::quiet_NaN();
    r.detail = std::string("error: ") + e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckRecord> run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (!is_suite(suite)) fail(ErrorKind::domain, "unknown verify suite '" + suite + "'");
  std::vector<const CheckDef*> chosen;
  for (const auto& c : all_checks())
    if (suite == "all" || c.suite == suite) chosen.push_back(&c);
  std::vector<CheckRecord> out(chosen.size());
  parallel_for(chosen.size(), [&](std::size_t i) { out[i] = run_check(*chosen[i], opts); });
  return out;
}

}  // namespace qhg
