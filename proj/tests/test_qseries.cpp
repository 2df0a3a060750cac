#include <doctest.h>

#include <cmath>

#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"

using namespace qhg;

TEST_CASE("hypergeometric series examples") {
  CHECK(hypergeometric_f({0.3, 0.4, 0.5}, 0.0).value == Complex{1.0, 0.0});
  const auto log_case = hypergeometric_f({1.0, 1.0, 2.0}, 0.5);
  CHECK(log_case.converged);
  CHECK(std::abs(log_case.value + std::log(0.5) / 0.5) < 1e-14);
  CHECK(std::abs(hypergeometric_f({0.7, 1.9, 1.9}, 0.3).value - std::pow(0.7, -0.7)) < 1e-14);
  const Complex z{0.2, -0.4};
  CHECK(std::abs(hypergeometric_f({Complex{0.7, 0.2}, 2.5, 2.5}, z).value -
                 std::pow(1.0 - z, -Complex{0.7, 0.2})) < 1e-14);
}

TEST_CASE("hypergeometric series errors and truncation") {
  CHECK_THROWS_AS(hypergeometric_f({1.0, 1.0, 2.0}, 1.0), Error);
  CHECK_THROWS_AS(hypergeometric_f({1.0, 1.0, -2.0}, 0.5), Error);
  CHECK_THROWS_AS(hypergeometric_f({1.0, 1.0, 2.0}, 0.5, {0, 1e-17}), Error);
  const auto cut = hypergeometric_f({1.0, 1.0, 2.0}, 0.9, {5, 1e-17});
  CHECK_FALSE(cut.converged);
  CHECK(cut.terms == 6);
}

TEST_CASE("basic hypergeometric series") {
  const auto q = QModulus::classical_from_q(0.3);
  CHECK(basic_phi({1.2, 0.7, 2.1}, q, 0.0).value == Complex{1.0, 0.0});
  // q-binomial theorem with b = c.
  const Complex z = 0.4;
  const Complex oracle = q_pochhammer_inf(q.pow(0.8) * z, q) / q_pochhammer_inf(z, q);
  CHECK(std::abs(basic_phi({0.8, 1.7, 1.7}, q, z).value - oracle) < 1e-14);
  CHECK_THROWS_AS(basic_phi({0.8, 1.7, 1.7}, QModulus::unit(0.6180339887), z), Error);
  CHECK_THROWS_AS(basic_phi({0.8, 1.7, 1.7}, q, 1.1), Error);
  CHECK_THROWS_AS(basic_phi({0.8, 1.7, -1.0}, q, 0.2), Error);
}

TEST_CASE("basic hypergeometric term ratio") {
  const auto q = QModulus::classical_from_q(0.5);
  const HGParams p{1.2, 0.7, 2.1};
  const Complex z = 0.25;
  const auto c = formal_phi_coefficients(p, q, 6);
  auto poch = [&](Complex a, int k) { return q_pochhammer(q.pow(a), q, k); };
  const Complex c5 = poch(p.a, 5) * poch(p.b, 5) / (poch(p.c, 5) * poch(1.0, 5));
  const Complex c4 = poch(p.a, 4) * poch(p.b, 4) / (poch(p.c, 4) * poch(1.0, 4));
  CHECK(std::abs(c[5] / c[4] - c5 / c4) < 1e-14);
  const double qr = 0.5;
  const double closed = (1.0 - std::pow(qr, 1.2 + 4)) * (1.0 - std::pow(qr, 0.7 + 4)) /
                        ((1.0 - std::pow(qr, 2.1 + 4)) * (1.0 - std::pow(qr, 5.0)));
  CHECK(std::abs(c[5] * z / (c[4] * z) - closed) < 1e-14);
  // Partial sums of the coefficients reproduce the series.
  const auto many = formal_phi_coefficients(p, q, 200);
  CHECK(std::abs(evaluate_polynomial(many, z) - basic_phi(p, q, z).value) < 1e-14);
}

TEST_CASE("basic hypergeometric series tends to the classical one") {
  const auto q = QModulus::classical_from_q(0.9999);
  const HGParams sets[] = {{1.2, 0.7, 2.1}, {0.5, 0.5, 1.5}, {1.0, 1.0, 2.0}, {0.3, 1.4, 0.9},
                           {Complex{0.8, 0.3}, 1.1, Complex{2.0, -0.2}}};
  for (const HGParams& p : sets)
    for (Complex z : {Complex{0.3}, Complex{-0.4, 0.2}})
      CHECK(std::abs(basic_phi(p, q, z).value - hypergeometric_f(p, z).value) < 5e-3);
}

TEST_CASE("formal series coefficients on the unit circle") {
  const auto q = QModulus::unit(0.55, 0.0);
  const HGParams p{0.9, 1.1, 2.0};
  const auto c = formal_phi_coefficients(p, q, 5);
  CHECK(c[0] == Complex{1.0, 0.0});
  const Complex c1 = q_bracket(p.a, q) * q_bracket(p.b, q) / (q_bracket(p.c, q) * q_bracket(1.0, q));
  CHECK(std::abs(c[1] - c1) < 1e-14);
  // [c + 1] = 0 when c + 1 = 1/omega.
  const auto g = QModulus::unit(0.6180339887);
  CHECK_THROWS_AS(formal_phi_coefficients({0.9, 1.1, 1.0 / 0.6180339887 - 1.0}, g, 4), Error);
  CHECK_THROWS_AS(formal_phi_coefficients(p, q, 0), Error);
}

TEST_CASE("evaluate_polynomial") {
  CHECK(evaluate_polynomial({1.0, 2.0, 3.0}, 2.0) == Complex{17.0, 0.0});
  CHECK(evaluate_polynomial({}, 2.0) == Complex{});
}
