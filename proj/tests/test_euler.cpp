#include <doctest.h>

#include <cmath>
#include <random>

#include "qhg/euler.hpp"
#include "qhg/qdiff.hpp"

using namespace qhg;

namespace {

const HGParams kParams{3.5, Complex{1.2, 0.5}, 1.0};
const double kOmega = 0.3010299957;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::domain;
}

void check_separates(const Contour& c, const ContourRequest& req) {
  CHECK(c.is_simple());
  const double h = req.height;
  for (const auto& fam : req.right_families)
    for (Complex p : fam.enumerate(-12.0, 12.0, -h, h)) {
      CHECK(c.lies_left(p));
      CHECK(c.distance_to(p) >= req.clearance * 0.999);
    }
  for (const auto& fam : req.left_families)
    for (Complex p : fam.enumerate(-12.0, 12.0, -h, h)) {
      CHECK_FALSE(c.lies_left(p));
      CHECK(c.distance_to(p) >= req.clearance * 0.999);
    }
}

Complex psi_value(const EulerProblem& prob, Complex x) { return capital_psi(prob, x).value; }

}  // namespace

TEST_CASE("Euler conditions") {
  const auto q = QModulus::unit(kOmega);
  CHECK(kind_of([&] { check_conditions_E({3.5, 1.2, 1.0}, q); }) == ErrorKind::parameter);
  const auto ok = check_conditions_E(kParams, q);
  CHECK(ok.e3_holds);
  CHECK(ok.warnings.empty());
  CHECK(kind_of([&] { check_conditions_E({-2.0, Complex{1.0, 1.0}, -0.5}, q); }) ==
        ErrorKind::parameter);
  const auto soft = check_conditions_E({3.5, Complex{-0.2, 0.5}, 1.0}, q);
  CHECK_FALSE(soft.e3_holds);
  CHECK(soft.warnings.size() == 1);
  CHECK(check_conditions_E({2.0, Complex{1.2, 0.5}, 1.0}, q).warnings.size() == 1);
  CHECK(kind_of([&] { check_conditions_E(kParams, QModulus::classical(0.3)); }) ==
        ErrorKind::parameter);
}

TEST_CASE("Euler integrand") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_E(kParams, q);
  // c - b = x pairs the two numerator factors.
  const Complex x = kParams.c - kParams.b;
  const Complex s{0.3, 0.8};
  const Complex paired = std::exp(2.0 * gamma_tilde(s + x, q).log_value -
                                  gamma_tilde(s + x + kParams.a, q).log_value -
                                  gamma_tilde(s + 1.0, q).log_value + kParams.b * s * q.log_q());
  CHECK(std::abs(psi_integrand(prob, s, x) / paired - 1.0) < 1e-13);
  CHECK(kind_of([&] { psi_integrand(prob, s, -0.5); }) == ErrorKind::domain);

  // Decay towards both ends of the imaginary direction.
  const double x0 = build_euler_contour(prob, 0.7).abscissa_bottom;
  for (double sign : {1.0, -1.0}) {
    const double l5 = std::log(std::abs(psi_integrand(prob, Complex{x0, 5.0 * sign}, 0.7)));
    const double l15 = std::log(std::abs(psi_integrand(prob, Complex{x0, 15.0 * sign}, 0.7)));
    CHECK((l5 - l15) / 10.0 > 0.0);
  }
}

TEST_CASE("Jackson integrals") {
  const auto q = QModulus::classical_from_q(0.5);
  CHECK(std::abs(jackson_integral([](Complex t) { return std::pow(t, 1.5); }, q) -
                 1.0 / q_bracket(2.5, q)) < 1e-12);
  CHECK(std::abs(jackson_integral([](Complex) { return Complex{1.0, 0.0}; }, q) - 1.0) < 1e-14);
  CHECK_THROWS_AS(jackson_integral([](Complex t) { return 1.0 / (t * t); }, q, 1e-17, 200), Error);
  CHECK_THROWS_AS(jackson_integral([](Complex) { return 1.0; }, QModulus::unit(kOmega)), Error);

  // q-beta integral.
  const auto q4 = QModulus::classical_from_q(0.4);
  const double b = 1.2, c = 2.9;
  auto f = [&](Complex t) {
    return std::pow(t, b - 1.0) * q_pochhammer_inf(t * 0.4, q4) /
           q_pochhammer_inf(t * std::pow(0.4, c - b), q4);
  };
  const Complex beta =
      gamma_q_classical(b, q4) * gamma_q_classical(c - b, q4) / gamma_q_classical(c, q4);
  CHECK(std::abs(jackson_integral(f, q4) / beta - 1.0) < 1e-12);
}

TEST_CASE("Jackson representation of the basic series") {
  const auto q = QModulus::classical_from_q(0.4);
  const HGParams p{1.4, 0.8, 2.2};
  CHECK(std::abs(euler_jackson_phi(p, q, 0.3) - basic_phi(p, q, 0.3).value) < 1e-8);
  CHECK(std::abs(euler_jackson_phi(p, q, 0.0) - 1.0) < 1e-13);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.3, 2.5), r(0.0, 0.5), th(-kPi, kPi);
  for (int k = 0; k < 5; ++k) {
    const HGParams d{u(rng), u(rng), u(rng) + 2.6};
    const Complex z = std::polar(r(rng), th(rng));
    CHECK(std::abs(euler_jackson_phi(d, q, z) - basic_phi(d, q, z).value) < 1e-8);
  }
  const auto near_one = QModulus::classical_from_q(0.9999);
  const HGParams f{0.9, 1.3, 2.1};
  CHECK(std::abs(euler_jackson_phi(f, near_one, 0.3) - hypergeometric_f(f, 0.3).value) < 5e-3);
  CHECK_THROWS_AS(euler_jackson_phi({1.4, -0.8, 2.2}, q, 0.3), Error);
}

TEST_CASE("additive-variable substitution changes the integrand by a constant") {
  const double qr = 0.5;
  const auto q = QModulus::classical_from_q(qr);
  const HGParams p{1.4, 0.8, 2.2};
  const double x = 0.6;
  const Complex z = std::pow(qr, x);
  std::vector<Complex> ratios;
  for (int k = 0; k < 10; ++k) {
    const Complex s{0.3 + 0.17 * k, 0.05 * k};
    const Complex t = q.pow(s);
    const Complex jackson_form = std::pow(t, p.b) * q_pochhammer_inf(t * z * q.pow(p.a), q) *
                                 q_pochhammer_inf(t * qr, q) /
                                 (q_pochhammer_inf(t * z, q) * q_pochhammer_inf(t * q.pow(p.c - p.b), q));
    const Complex gamma_form = gamma_q_classical(s + x, q) * gamma_q_classical(s + p.c - p.b, q) /
                               (gamma_q_classical(s + x + p.a, q) * gamma_q_classical(s + 1.0, q)) *
                               q.pow(p.b * s);
    ratios.push_back(jackson_form / gamma_form);
  }
  Complex mean{};
  for (Complex r : ratios) mean += r / static_cast<double>(ratios.size());
  double var = 0.0;
  for (Complex r : ratios) var += std::norm(r - mean) / static_cast<double>(ratios.size());
  CHECK(var < 1e-10 * std::norm(mean));
  CHECK(std::abs(mean - std::pow(1.0 - qr, (p.c - p.a - p.b - 1.0).real())) < 1e-12);
}

TEST_CASE("Euler contour") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_E(kParams, q);
  const auto req = euler_contour_request(prob, 0.7);
  const Contour c = build_separating_contour(req);
  check_separates(c, req);
  // b - c = 0.2 + 0.5i lies right of -x - a + 1 + 1/omega, so no vertical line separates.
  CHECK_FALSE(c.is_straight());
  // -x + n1 + n2/omega meets -1 + n1' + n2'/omega when x = -1/omega.
  CHECK(kind_of([&] { build_euler_contour(prob, Complex{-1.0 / kOmega, 1e-3}); }) == ErrorKind::contour);
  CHECK(kind_of([&] { build_euler_contour(prob, 0.7, 20.0, 2.0); }) == ErrorKind::contour);
  CHECK(kind_of([&] { build_euler_contour(prob, -0.7); }) == ErrorKind::domain);
}

TEST_CASE("Euler-type integral solves the additive q-difference equation") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_E(kParams, q);
  const Complex x = 0.7;
  const Complex g0 = psi_value(prob, x), g1 = psi_value(prob, x + 1.0), g2 = psi_value(prob, x + 2.0);
  CHECK(lplus_from_samples(g0, g1, g2, kParams, x, q).normalized < 1e-6);

  // Two admissible contours.
  auto req = euler_contour_request(prob, x);
  const Contour base = build_separating_contour(req);
  req.preferred_abscissa = base.abscissa_bottom + 0.15;
  req.clearance = 0.1;
  const Contour other = build_separating_contour(req);
  check_separates(other, req);
  const auto r1 = capital_psi(prob, x, {}, &base);
  const auto r2 = capital_psi(prob, x, {}, &other);
  CHECK(std::abs(r1.value - r2.value) <= r1.error_estimate + r2.error_estimate);
}

TEST_CASE("Euler-type integral is analytic in x") {
  const auto prob = check_conditions_E(kParams, QModulus::unit(kOmega));
  const Complex x = 0.7;
  const Complex g = psi_value(prob, x);
  const Complex d2 = (psi_value(prob, x + Complex{0.0, 1e-2}) - g) / Complex{0.0, 1e-2};
  const Complex d3 = (psi_value(prob, x + Complex{0.0, 1e-3}) - g) / Complex{0.0, 1e-3};
  const Complex r2 = (psi_value(prob, x + 1e-2) - g) / 1e-2;
  CHECK(std::abs(d2 - d3) < 2e-2 * std::abs(d3));
  // Cauchy-Riemann: the real and imaginary difference quotients agree.
  CHECK(std::abs(r2 - d2) < 4e-2 * std::abs(d3));
}
