#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "waveharm/oracle.hpp"
#include "waveharm/quadrature.hpp"
#include "waveharm/special.hpp"

using namespace waveharm;
using Cx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

Cx unit_imag_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}
}  // namespace

TEST_CASE("hankel coefficients: closed-form examples") {
  CHECK(hankel_coeff(5, 0) == Cx(1.0, 0.0));
  CHECK(std::abs(hankel_coeff(1, 1) - Cx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(hankel_coeff(2, 2) - Cx(-3.0, 0.0)) < 1e-14);
  CHECK_THROWS(hankel_coeff(2, 3));
}

TEST_CASE("hankel coefficients match the product formula directly") {
  for (int n = 0; n <= 15; ++n) {
    for (int m = 0; m <= n; ++m) {
      // (i/2)^m (n+m)! / ((n-m)! m!)
      double magnitude = 1.0;
      for (int p = 1; p <= m; ++p)
        magnitude *= 0.5 * (n + p) * (n - m + p) / p;
      const Cx expected = unit_imag_power(m) * magnitude;
      CHECK(std::abs(hankel_coeff(n, m) - expected) <=
            1e-12 * std::abs(expected));
    }
  }
}

TEST_CASE("spherical_hankel small cases") {
  // n=0: e^{it}/t, at t=pi equals -1/pi.
  CHECK(std::abs(spherical_hankel(0, kPi) - Cx(-1.0 / kPi, 0.0)) < 1e-15);
  // n=1 at t=2: (e^{2i}/2)(1 + i/2)
  const Cx expected = std::polar(1.0, 2.0) / 2.0 * Cx(1.0, 0.5);
  CHECK(std::abs(spherical_hankel(1, 2.0) - expected) < 1e-14);
  CHECK_THROWS(spherical_hankel(2, 0.0));
  CHECK_THROWS(spherical_hankel(2, -1.0));
}

TEST_CASE("polynomial normalization equals i^{n+1} h_n^(1)") {
  for (int n = 0; n <= 10; ++n) {
    for (double t : {0.5, 1.0, 5.0, 20.0}) {
      const Cx ours = spherical_hankel(n, t);
      const Cx standard = unit_imag_power(n + 1) * oracle::std_hankel1(n, t);
      CHECK(std::abs(ours - standard) <= 1e-10 * std::abs(standard));
    }
  }
}

TEST_CASE("hankel derivative: analytic n=0 and finite differences") {
  const Cx d0 = spherical_hankel_derivative(0, 1.0);
  const Cx expected = std::polar(1.0, 1.0) * Cx(-1.0, 1.0);  // e^i (i - 1)
  CHECK(std::abs(d0 - expected) < 1e-14);

  for (int n = 0; n <= 8; ++n) {
    for (double t : {0.5, 1.0, 3.0, 8.0, 20.0}) {
      const double h = 1e-5;
      const Cx fd =
          (spherical_hankel(n, t + h) - spherical_hankel(n, t - h)) /
          (2.0 * h);
      const Cx an = spherical_hankel_derivative(n, t);
      CHECK(std::abs(an - fd) <= 1e-7 * std::abs(an));
    }
  }
  CHECK_THROWS(spherical_hankel_derivative(1, 0.0));
}

TEST_CASE("hankel derivative agrees with the standard recurrence identity") {
  // h' = h_{n-1} - (n+1)/t h_n holds in the polynomial normalization up to
  // the phase ladder: h_n = i^{n+1} h_n^{(1)} means
  // h_n' = i^{n+1} (h^{(1)}_{n-1} - (n+1)/t h^{(1)}_n).
  for (int n = 1; n <= 8; ++n) {
    for (double t : {0.7, 2.0, 10.0}) {
      const Cx lhs = spherical_hankel_derivative(n, t);
      const Cx rhs = unit_imag_power(n + 1) *
                     (oracle::std_hankel1(n - 1, t) -
                      (static_cast<double>(n + 1) / t) *
                          oracle::std_hankel1(n, t));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }
  }
}

TEST_CASE("spherical_bessel_j basics and Wronskian") {
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(3, 0.0) == 0.0);
  CHECK(spherical_bessel_j(1, kPi) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  // j_n(t) y_n'(t) - j_n'(t) y_n(t) = 1/t^2 via h = j + i y:
  // equivalently Im( conj(h_n) h_n' ) = 1/t^2 in the standard family.
  for (int n = 0; n <= 10; ++n) {
    for (double t : {0.5, 1.0, 4.0, 15.0}) {
      const Cx h = oracle::std_hankel1(n, t);
      Cx hp;
      if (n == 0)
        hp = -oracle::std_hankel1(1, t);
      else
        hp = oracle::std_hankel1(n - 1, t) -
             (static_cast<double>(n + 1) / t) * oracle::std_hankel1(n, t);
      const double wronskian = std::imag(std::conj(h) * hp);
      CHECK(wronskian == doctest::Approx(1.0 / (t * t)).epsilon(1e-10));
      // And our j matches the real part of the standard Hankel.
      CHECK(spherical_bessel_j(n, t) ==
            doctest::Approx(h.real()).epsilon(1e-12));
    }
  }
}

TEST_CASE("downward recurrence regime t < n") {
  // Cross-check against the oracle series implementation.
  for (int n : {8, 12, 20}) {
    for (double t : {0.5, 2.0, 5.0}) {
      CHECK(spherical_bessel_j(n, t) ==
            doctest::Approx(oracle::std_bessel_j(n, t)).epsilon(1e-11));
    }
  }
}

TEST_CASE("legendre_P basics and recurrence identity") {
  for (double x : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    CHECK(legendre_P(0, x) == 1.0);
    CHECK(legendre_P(1, x) == x);
  }
  CHECK(legendre_P(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
  for (int n = 1; n <= 20; ++n) {
    for (double x : {-0.9, -0.4, 0.1, 0.6, 0.95}) {
      const double lhs = x * legendre_P(n, x);
      const double rhs = (n + 1.0) / (2.0 * n + 1.0) * legendre_P(n + 1, x) +
                         n / (2.0 * n + 1.0) * legendre_P(n - 1, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("sph_harm closed forms") {
  for (double theta : {0.3, 1.2, 2.8}) {
    for (double phi : {0.0, 1.0, 5.0}) {
      CHECK(std::abs(sph_harm({0, 0}, theta, phi) -
                     Cx(1.0 / std::sqrt(4.0 * kPi), 0.0)) < 1e-14);
      CHECK(std::abs(sph_harm({1, 0}, theta, phi) -
                     Cx(std::sqrt(3.0 / (4.0 * kPi)) * std::cos(theta), 0.0)) <
            1e-14);
    }
  }
  CHECK_THROWS(sph_harm({1, 2}, 0.5, 0.5));
}

TEST_CASE("sph_harm conjugation symmetry") {
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (double theta : {0.4, 1.5, 2.6}) {
        for (double phi : {0.2, 2.9}) {
          const Cx lhs = std::conj(sph_harm({l, m}, theta, phi));
          const Cx rhs = (m % 2 == 0 ? 1.0 : -1.0) *
                         sph_harm({l, -m}, theta, phi);
          CHECK(std::abs(lhs - rhs) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("sph_harm orthonormal under sin(theta) dtheta dphi") {
  // Gram up to degree 10 with the sin(theta) weight folded into the
  // integrand is the identity.
  const QuadratureRule rule = make_rule(40, 48);
  const int l_max = 10;
  const int n = (l_max + 1) * (l_max + 1);
  double max_err = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const AngularIndex a = unrank(i), b = unrank(j);
      if (a.m != b.m) continue;  // phi-orthogonality is exact on the grid
      const Cx val = integrate(rule, [&](double theta, double phi) {
        return sph_harm(a, theta, phi) * std::conj(sph_harm(b, theta, phi)) *
               std::sin(theta);
      });
      const double expected = (i == j) ? 1.0 : 0.0;
      max_err = std::max(max_err, std::abs(val - expected));
    }
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("sph_harm matches the independent standard implementation") {
  for (int l = 0; l <= 10; ++l)
    for (int m = -l; m <= l; ++m)
      for (double theta : {0.2, 1.1, 2.0})
        for (double phi : {0.7, 4.0}) {
          const Cx ours = sph_harm({l, m}, theta, phi);
          const Cx ref = oracle::std_sph_harm(l, m, theta, phi);
          CHECK(std::abs(ours - ref) < 1e-12);
        }
}

TEST_CASE("sph_harm_dtheta agrees with finite differences") {
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m)
      for (double theta : {0.5, 1.3, 2.4}) {
        const double phi = 1.9, h = 1e-6;
        const Cx fd = (sph_harm({l, m}, theta + h, phi) -
                       sph_harm({l, m}, theta - h, phi)) /
                      (2.0 * h);
        const Cx an = sph_harm_dtheta({l, m}, theta, phi);
        CHECK(std::abs(an - fd) < 1e-8 * (1.0 + std::abs(an)));
      }
}

TEST_CASE("growth of |h_n| at fixed argument is eventually monotone") {
  // |h_n(2)| ~ n!/1^n growth: the ratio |h_{n+1}|/|h_n| increases for n >= 5.
  double prev_ratio = 0.0;
  for (int n = 5; n <= 14; ++n) {
    const double ratio = std::abs(spherical_hankel(n + 1, 2.0)) /
                         std::abs(spherical_hankel(n, 2.0));
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
}
