#include <doctest.h>

#include <cmath>
#include <random>

#include "qhg/classical_gamma.hpp"
#include "qhg/numerics.hpp"
#include "qhg/qgamma.hpp"

using namespace qhg;

namespace {

double mod_2pi_i(Complex x) { return std::abs(expm1(principal_log_class(x))); }

// Distance from z to the zero/pole lattice n1 + n2/omega (n1, n2 > 0 or n1, n2 <= 0).
double lattice_distance(Complex z, double omega) {
  double best = 1e300;
  for (int n1 = -12; n1 <= 12; ++n1)
    for (int n2 = -12; n2 <= 12; ++n2) {
      if ((n1 > 0) != (n2 > 0)) continue;
      best = std::min(best, std::abs(z - (n1 + n2 / omega)));
    }
  return best;
}

// +1 per zero, -1 per pole of gamma_tilde strictly inside |z - c| < r.
int lattice_count(Complex c, double r, double omega) {
  int count = 0;
  for (int n1 = -12; n1 <= 12; ++n1)
    for (int n2 = -12; n2 <= 12; ++n2) {
      if ((n1 > 0) != (n2 > 0)) continue;
      if (std::abs(c - (n1 + n2 / omega)) < r) count += n1 > 0 ? 1 : -1;
    }
  return count;
}

// Euler's pentagonal number theorem.
double pentagonal_euler_function(double q) {
  double sum = 0.0;
  for (int k = -60; k <= 60; ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * std::pow(q, k * (3.0 * k - 1.0) / 2.0);
  return sum;
}

}  // namespace

TEST_CASE("q_bracket examples") {
  const auto q = QModulus::unit(0.6180339887);
  CHECK(std::abs(q_bracket(0.0, q)) < 1e-15);
  CHECK(std::abs(q_bracket(1.0, q) - 1.0) < 1e-15);
  CHECK(std::abs(q_bracket(2.0, q) - (1.0 + q.q())) < 1e-14);
  const auto qc = QModulus::classical_from_q(0.3);
  CHECK(std::abs(q_bracket(2.0, qc) - 1.3) < 1e-14);
}

TEST_CASE("irrationality guard") {
  CHECK_THROWS_AS(QModulus::unit(0.5), Error);
  CHECK_THROWS_AS(QModulus::unit(0.55), Error);
  CHECK_NOTHROW(QModulus::unit(0.55, 0.0));
  CHECK_NOTHROW(QModulus::unit(0.6180339887));
  CHECK_NOTHROW(QModulus::unit(0.4142135624));
  CHECK_THROWS_AS(QModulus::unit(1.2), Error);
  CHECK_THROWS_AS(QModulus::classical(-1.0), Error);
  CHECK_THROWS_AS(QModulus::classical_from_q(1.0), Error);
  const auto near = QModulus::nearest_rational(0.55);
  CHECK(near.p == 11);
  CHECK(near.r == 20);
}

TEST_CASE("modular q-gamma functional equation at one point") {
  const auto q = QModulus::unit(0.6180339887);
  const Complex z{0.3, 0.2};
  const Complex ratio = std::exp(gamma_tilde(z + 1.0, q).log_value - gamma_tilde(z, q).log_value);
  CHECK(std::abs(ratio / q_bracket(z, q) - 1.0) < 1e-9);
}

TEST_CASE("modular q-gamma functional equation on random points") {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double omega : {std::sqrt(2.0) - 1.0, (std::sqrt(5.0) - 1.0) / 2.0, 0.3010299957}) {
    const auto q = QModulus::unit(omega);
    int checked = 0;
    while (checked < 50) {
      const Complex z{u(rng), u(rng)};
      if (std::abs(z) > 3.0 || lattice_distance(z, omega) < 0.05 ||
          lattice_distance(z + 1.0, omega) < 0.05)
        continue;
      ++checked;
      const Complex ratio = std::exp(gamma_tilde(z + 1.0, q).log_value - gamma_tilde(z, q).log_value);
      CHECK(std::abs(ratio / q_bracket(z, q) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("modular q-gamma zeros and poles") {
  const double omega = 0.6180339887;
  const auto q = QModulus::unit(omega);
  auto f = [&](Complex z) { return gamma_tilde(z, q).value; };
  CHECK(winding_number(f, 1.0 + 1.0 / omega, 0.1) == 1);
  CHECK(winding_number(f, 0.0, 0.1) == -1);
  CHECK(gamma_tilde(0.0, q).status == S2Status::pole);
  CHECK(gamma_tilde(1.0 + 1.0 / omega, q).status == S2Status::zero);
  CHECK(gamma_tilde(0.5, q).status == S2Status::regular);

  // Every lattice point with |z| <= 4 individually.
  for (int n1 = -5; n1 <= 5; ++n1)
    for (int n2 = -5; n2 <= 5; ++n2) {
      if ((n1 > 0) != (n2 > 0)) continue;
      const Complex p = n1 + n2 / omega;
      if (std::abs(p) > 4.0) continue;
      CHECK(winding_number(f, p, 0.1) == (n1 > 0 ? 1 : -1));
    }

  // Scan: circles of radius 0.36 around a 0.5-spaced grid cover |z| <= 4.
  const double r = 0.36;
  for (int i = -8; i <= 8; ++i)
    for (int j = -8; j <= 8; ++j) {
      const Complex c{0.5 * i, 0.5 * j};
      if (std::abs(c) > 4.0 + r) continue;
      bool near_boundary = false;
      for (int n1 = -12; n1 <= 12 && !near_boundary; ++n1)
        for (int n2 = -12; n2 <= 12; ++n2) {
          if ((n1 > 0) != (n2 > 0)) continue;
          if (std::abs(std::abs(c - (n1 + n2 / omega)) - r) < 0.05) {
            near_boundary = true;
            break;
          }
        }
      if (near_boundary) continue;
      CHECK(winding_number(f, c, r) == lattice_count(c, r, omega));
    }
}

TEST_CASE("classical-regime modular q-gamma is a periodic multiple of the classical q-gamma") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> re(0.1, 0.9), im(-0.3, 0.3);
  {
    const auto q = QModulus::classical(0.25);
    const Complex z = 0.4;
    const Complex r0 = gamma_tilde(z, q).log_value - log_gamma_q_classical(z, q);
    const Complex r1 = gamma_tilde(z + 1.0, q).log_value - log_gamma_q_classical(z + 1.0, q);
    CHECK(mod_2pi_i(r1 - r0) < 1e-8);
  }
  for (double tau : {0.1, 0.25, 1.0}) {
    const auto q = QModulus::classical(tau);
    for (int k = 0; k < 10; ++k) {
      const Complex z{re(rng), im(rng)};
      const Complex r0 = gamma_tilde(z, q).log_value - log_gamma_q_classical(z, q);
      const Complex r1 = gamma_tilde(z + 1.0, q).log_value - log_gamma_q_classical(z + 1.0, q);
      CHECK(mod_2pi_i(r1 - r0) < 1e-8);
    }
  }
}

TEST_CASE("classical q-gamma examples") {
  const auto q = QModulus::classical_from_q(0.5);
  CHECK(std::abs(gamma_q_classical(1.0, q) - 1.0) < 1e-14);
  CHECK(std::abs(gamma_q_classical(2.0, q) - 1.0) < 1e-14);
  const Complex z{0.7, 0.3};
  CHECK(std::abs(gamma_q_classical(z + 1.0, q) / gamma_q_classical(z, q) / q_bracket(z, q) - 1.0) < 1e-13);
  const auto near_one = QModulus::classical_from_q(0.999);
  CHECK(std::abs(gamma_q_classical(2.5, near_one) - qhg::gamma(2.5)) < 2e-2);
  CHECK_THROWS_AS(gamma_q_classical(-2.0, q), Error);
  CHECK_THROWS_AS(gamma_q_classical(0.0, q), Error);
  CHECK_THROWS_AS(gamma_q_classical(1.0, QModulus::unit(0.6180339887)), Error);
}

TEST_CASE("q-Pochhammer symbols") {
  const auto q = QModulus::classical_from_q(0.5);
  CHECK(q_pochhammer(0.3, q, 0) == Complex{1.0, 0.0});
  CHECK(q_pochhammer(0.0, q, 7) == Complex{1.0, 0.0});
  CHECK(std::abs(q_pochhammer(0.3, q, 2) - 0.7 * 0.85) < 1e-15);
  const Complex qq = q_pochhammer_inf(0.5, q);
  CHECK(std::abs(qq - pentagonal_euler_function(0.5)) < 1e-14);
  CHECK(std::abs(qq - 0.2887880951) < 1e-10);
  CHECK(std::abs(std::exp(log_q_pochhammer_inf(Complex{0.3, 0.4}, q)) -
                 q_pochhammer_inf(Complex{0.3, 0.4}, q)) < 1e-14);
  const auto u = QModulus::unit(0.6180339887);
  CHECK(std::abs(q_pochhammer(0.5, u, 2) - 0.5 * (1.0 - 0.5 * u.q())) < 1e-15);
  CHECK_THROWS_AS(q_pochhammer_inf(0.5, u), Error);
}

TEST_CASE("asymptotic main term") {
  const auto q = QModulus::unit(0.4142);
  for (ImSign sign : {ImSign::positive, ImSign::negative}) {
    const double s = sign == ImSign::positive ? 1.0 : -1.0;
    std::vector<Complex> dev;
    for (double y : {5.0, 10.0, 20.0, 40.0}) {
      const Complex z{0.0, s * y};
      dev.push_back(principal_log_class(gamma_tilde(z, q).log_value - asymptotic_main_term(z, q, sign)));
    }
    for (const Complex& d : dev) {
      CHECK(std::abs(d) < 10.0);
      CHECK(mod_2pi_i(d - dev.back()) < 1e-5);
    }
  }
  const Complex z{0.0, 15.0};
  const Complex diff = asymptotic_main_term(z + 1.0, q, ImSign::positive) -
                       asymptotic_main_term(z, q, ImSign::positive);
  CHECK(mod_2pi_i(diff - std::log(q_bracket(z, q))) < 1e-6);
  CHECK_THROWS_AS(asymptotic_main_term(Complex{0.0, 3.0}, q, ImSign::negative), Error);
  CHECK_THROWS_AS(asymptotic_main_term(2.0, q, ImSign::positive), Error);
}

TEST_CASE("modular q-gamma log is continuous off the real rays beyond the strip") {
  const double omega = 0.6180339887;
  const auto q = QModulus::unit(omega);
  // Largest step along the path, and the total of steps larger than 1.
  auto walk = [&](Complex from, Complex to, int steps) {
    Complex prev = gamma_tilde(from, q).log_value;
    double worst = 0.0;
    Complex jumps{};
    for (int k = 1; k <= steps; ++k) {
      const Complex z = from + (to - from) * (static_cast<double>(k) / steps);
      const Complex cur = gamma_tilde(z, q).log_value;
      if (std::abs(cur - prev) > 1.0) jumps += cur - prev;
      else worst = std::max(worst, std::abs(cur - prev));
      prev = cur;
    }
    return std::pair{worst, jumps};
  };
  for (auto [from, to] : {std::pair{Complex{0.5, -2.0}, Complex{0.5, 2.0}},
                          std::pair{Complex{2.0, -2.0}, Complex{2.0, 2.0}},
                          std::pair{Complex{-3.0, 0.3}, Complex{3.0, 0.3}},
                          std::pair{Complex{-3.0, -0.3}, Complex{3.0, -0.3}},
                          std::pair{Complex{-3.0, 2.0}, Complex{4.0, 2.0}}}) {
    const auto [worst, jumps] = walk(from, to, 600);
    CHECK(worst < 0.2);
    CHECK(std::abs(jumps) == 0.0);
  }
  // Crossing the ray through the poles 0, -1, -1/omega, -2: one 2 pi i per pole passed.
  {
    const auto [worst, jumps] = walk(Complex{-2.3, -2.0}, Complex{-2.3, 2.0}, 600);
    CHECK(worst < 0.2);
    CHECK(std::abs(jumps - Complex{0.0, -8.0 * kPi}) < 0.1);
  }
}
