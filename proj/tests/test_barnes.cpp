#include <doctest.h>

#include <cmath>
#include <random>

#include "qhg/barnes.hpp"
#include "qhg/qdiff.hpp"

using namespace qhg;

namespace {

const double kOmega = 0.0618034;
const HGParams kParams{2.3, 2.7, 1.1};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::domain;
}

// Every enumerated pole within the height sits on its side at distance >= clearance.
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

}  // namespace

TEST_CASE("separation and convergence conditions") {
  CHECK(kind_of([] { check_conditions_B({2.5, 3.1, 1.2}, QModulus::unit(0.2, 0.0)); }) ==
        ErrorKind::parameter);
  const auto ok = check_conditions_B({2.5, 3.1, 1.2}, QModulus::unit(0.1, 0.0));
  CHECK(ok.clause == SeparationClause::real_ordering);
  CHECK(std::abs(ok.b2_margin - 0.46) < 1e-14);
  const auto im = check_conditions_B({Complex{1.0, 2.0}, Complex{1.0, -1.0}, Complex{2.0, 0.5}},
                                     QModulus::unit(0.15, 0.0));
  CHECK(im.clause == SeparationClause::imag_separation);
  CHECK(kind_of([] { check_conditions_B({0.5, 3.0, 1.0}, QModulus::unit(kOmega)); }) ==
        ErrorKind::parameter);
  CHECK(kind_of([] { check_conditions_B(kParams, QModulus::classical(0.3)); }) ==
        ErrorKind::parameter);
  CHECK(kind_of([] { check_conditions_B(kParams, QModulus::unit(kOmega), 3.0); }) ==
        ErrorKind::parameter);
  const auto prob = check_conditions_B(kParams, QModulus::unit(kOmega));
  CHECK(prob.delta == doctest::Approx(0.1));
  CHECK(prob.sector.arg_max == doctest::Approx(kPi - 2.0 * kPi * kOmega * 4.9));
  CHECK(prob.convergence_arg_max == doctest::Approx(kPi - 2.0 * kPi * kOmega * 2.9));
}

TEST_CASE("integrand with a = c") {
  BarnesProblem prob;
  prob.params = {2.2, 2.2, 2.2};
  prob.q = QModulus::unit(0.4472136);
  prob.sector = SectorSpec::make(-kPi + 0.1, kPi - 0.1);
  const Complex s{0.0, 0.5}, z = -0.3;
  const Complex reduced = std::exp(gamma_tilde(2.2 + s, prob.q).log_value -
                                   gamma_tilde(1.0 + s, prob.q).log_value +
                                   log_barnes_kernel(s, std::log(0.3)));
  CHECK(std::abs(barnes_integrand(prob, s, z) / reduced - 1.0) < 1e-13);
}

TEST_CASE("integrand decays along the imaginary direction") {
  const auto prob = check_conditions_B(kParams, QModulus::unit(kOmega));
  const double x0 = build_barnes_contour(prob).abscissa_bottom;
  for (double sign : {1.0, -1.0}) {
    const double near = std::abs(barnes_integrand(prob, Complex{x0, 5.0 * sign}, -0.4));
    const double far = std::abs(barnes_integrand(prob, Complex{x0, 15.0 * sign}, -0.4));
    CHECK(far <= near * std::exp(-prob.delta * 10.0));
  }
}

TEST_CASE("contiguous relation of the integrand") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> ab(1.5, 3.0), cc(0.5, 1.4), sre(-0.45, 0.45),
      sim(-3.0, 3.0), rad(0.05, 0.9), th(-2.5, 1.0);
  const auto q = QModulus::unit(kOmega);
  const Complex lq = q.log_q();
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    const HGParams p{ab(rng), ab(rng), cc(rng)};
    const BarnesProblem prob = check_conditions_B(p, q);
    BarnesProblem up = prob;
    up.params = {p.a + 1.0, p.b + 1.0, p.c};
    for (int k = 0; k < 20; ++k) {
      const Complex s{sre(rng), sim(rng)};
      const Complex ell{std::log(rad(rng)), th(rng)};
      auto f = [&](Complex l) { return barnes_integrand_log_variable(prob, s, l); };
      const auto rep = lq_from_samples(f(ell), f(ell + lq), f(ell + 2.0 * lq), p, -std::exp(ell), q);
      const Complex rhs = barnes_integrand_log_variable(up, s - 1.0, ell) -
                          barnes_integrand_log_variable(up, s, ell);
      worst = std::max(worst, std::abs(rep.residual - rhs) / rep.scale);
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Barnes-type integral solves the q-difference equation") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_B(kParams, q);
  const Complex ell = std::log(Complex{0.4, 0.0});
  const auto v = capital_phi_log_variable(prob, {ell, ell + q.log_q(), ell + 2.0 * q.log_q()});
  const auto rep = lq_from_samples(v[0].value, v[1].value, v[2].value, kParams, -0.4, q);
  CHECK(rep.normalized < 1e-6);
  CHECK(std::abs(v[0].value - capital_phi(prob, -0.4).value) <= 2.0 * v[0].error_estimate + 1e-15);
}

TEST_CASE("Barnes-type integral does not depend on the contour") {
  const auto prob = check_conditions_B(kParams, QModulus::unit(kOmega));
  auto req = barnes_contour_request(prob);
  const Contour base = build_separating_contour(req);
  check_separates(base, req);
  const auto ref = capital_phi(prob, -0.4, {}, &base);
  for (double dx : {-0.1, 0.1}) {
    req.preferred_abscissa = base.abscissa_bottom + dx;
    const Contour moved = build_separating_contour(req);
    check_separates(moved, req);
    CHECK(moved.abscissa_bottom == doctest::Approx(base.abscissa_bottom + dx));
    const auto other = capital_phi(prob, -0.4, {}, &moved);
    CHECK(std::abs(other.value - ref.value) <= other.error_estimate + ref.error_estimate);
  }
}

TEST_CASE("contour for the imaginary-separation clause") {
  const auto prob = check_conditions_B({Complex{1.0, 2.0}, Complex{1.0, -1.0}, Complex{2.0, 0.5}},
                                       QModulus::unit(0.0732051));
  const auto req = barnes_contour_request(prob);
  check_separates(build_separating_contour(req), req);
}

TEST_CASE("small argument behaviour") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_B(kParams, q);
  CHECK(std::abs(gamma_tilde(1.0, q).value - std::sqrt(kOmega)) < 1e-12);
  const Complex z = -0.01;
  const auto c = formal_phi_coefficients(kParams, q, 3);
  const Complex scaled = capital_phi(prob, z).value * gamma_tilde(1.0, q).value;
  CHECK(std::abs(scaled - (c[0] + c[1] * z)) < 10.0 * std::abs(c[2] * z * z));
  CHECK(std::abs(scaled - (c[0] + c[1] * z + c[2] * z * z)) < 1e-4);
}

TEST_CASE("prefactor in log space") {
  const auto q = QModulus::unit(kOmega);
  const auto prob = check_conditions_B(kParams, q);
  const Complex direct =
      gamma_tilde(kParams.c, q).value / (gamma_tilde(kParams.a, q).value * gamma_tilde(kParams.b, q).value);
  CHECK(std::abs(std::exp(barnes_prefactor_log(prob)) / direct - 1.0) < 1e-10);
}

TEST_CASE("sector and domain errors") {
  const auto prob = check_conditions_B(kParams, QModulus::unit(kOmega));
  CHECK(kind_of([&] { capital_phi(prob, -1.2); }) == ErrorKind::sector);
  const double edge = prob.sector.arg_max + 0.01;
  CHECK(kind_of([&] { capital_phi(prob, -std::polar(0.4, edge)); }) == ErrorKind::sector);
  CHECK(kind_of([&] { capital_phi_log_variable(prob, {Complex{-1.0, prob.convergence_arg_max + 0.01}}); }) ==
        ErrorKind::sector);
  const Complex near_edge = -std::polar(0.3, kPi - 0.025);
  CHECK(kind_of([&] { classical_barnes({0.9, 1.3, 2.1}, near_edge); }) == ErrorKind::sector);
}

TEST_CASE("classical Barnes integral reproduces the hypergeometric series") {
  const HGParams p{0.9, 1.3, 2.1};
  const auto r = classical_barnes(p, -0.35);
  CHECK(std::abs(r.value - hypergeometric_f(p, -0.35).value) < 1e-8);
  CHECK(std::abs(classical_barnes(p, -0.01).value - (1.0 + 0.9 * 1.3 / 2.1 * -0.01)) < 1e-3);
  const Complex z{-0.2, 0.3};
  CHECK(std::abs(classical_barnes({Complex{0.6, 0.2}, 1.7, 2.4}, z).value -
                 hypergeometric_f({Complex{0.6, 0.2}, 1.7, 2.4}, z).value) < 1e-8);
  CHECK_THROWS_AS(classical_barnes({-1.0, 1.3, 2.1}, -0.3), Error);
}

TEST_CASE("Watson integral reproduces the basic series") {
  const HGParams p{1.4, 0.8, 2.2};
  const auto q = QModulus::classical_from_q(0.4);
  CHECK(std::abs(watson_integral(p, q, -0.3).value - basic_phi(p, q, -0.3).value) < 1e-6);
  // Leading terms 1 + (1-q^a)(1-q^b)/((1-q^c)(1-q)) z.
  const double c1 = (1.0 - std::pow(0.4, 1.4)) * (1.0 - std::pow(0.4, 0.8)) /
                    ((1.0 - std::pow(0.4, 2.2)) * 0.6);
  CHECK(std::abs(watson_integral(p, q, -0.001).value - (1.0 - 0.001 * c1)) < 1e-6);
  const auto near_one = QModulus::classical_from_q(0.99);
  CHECK(std::abs(watson_integral(p, near_one, -0.3).value - classical_barnes(p, -0.3).value) < 5e-3);
  CHECK_THROWS_AS(watson_integral(p, QModulus::unit(kOmega), -0.3), Error);
}
