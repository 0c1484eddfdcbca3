#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "waveharm/oracle.hpp"
#include "waveharm/quadrature.hpp"
#include "waveharm/special.hpp"
#include "waveharm/surface.hpp"

using namespace waveharm;
using Cx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("std_bessel closed forms") {
  for (double t : {0.3, 1.0, 4.0, 12.0}) {
    CHECK(oracle::std_bessel_j(0, t) ==
          doctest::Approx(std::sin(t) / t).epsilon(1e-13));
    CHECK(oracle::std_bessel_j(1, t) ==
          doctest::Approx(std::sin(t) / (t * t) - std::cos(t) / t)
              .epsilon(1e-12));
    CHECK(oracle::std_bessel_y(0, t) ==
          doctest::Approx(-std::cos(t) / t).epsilon(1e-13));
    CHECK(oracle::std_bessel_y(1, t) ==
          doctest::Approx(-std::cos(t) / (t * t) - std::sin(t) / t)
              .epsilon(1e-12));
  }
  CHECK(oracle::std_bessel_j(0, 1e-12) == doctest::Approx(1.0));
}

TEST_CASE("std_hankel1 is j + i y and matches e^{it}/t at order zero") {
  for (double t : {0.5, 2.0, 9.0}) {
    const Cx h = oracle::std_hankel1(0, t);
    const Cx expected = Cx(0.0, -1.0) * std::polar(1.0, t) / t;
    CHECK(std::abs(h - expected) < 1e-13);
    for (int n = 0; n <= 6; ++n) {
      const Cx hn = oracle::std_hankel1(n, t);
      CHECK(hn.real() == doctest::Approx(oracle::std_bessel_j(n, t)));
      CHECK(hn.imag() == doctest::Approx(oracle::std_bessel_y(n, t)));
    }
  }
}

TEST_CASE("std_sph_harm closed forms") {
  for (double theta : {0.4, 1.3, 2.7}) {
    for (double phi : {0.0, 2.1}) {
      CHECK(std::abs(oracle::std_sph_harm(0, 0, theta, phi) -
                     Cx(1.0 / std::sqrt(4.0 * kPi), 0.0)) < 1e-14);
      const Cx y11 = -std::sqrt(3.0 / (8.0 * kPi)) * std::sin(theta) *
                     std::polar(1.0, phi);
      CHECK(std::abs(oracle::std_sph_harm(1, 1, theta, phi) - y11) < 1e-13);
      const Cx y1m1 = std::sqrt(3.0 / (8.0 * kPi)) * std::sin(theta) *
                      std::polar(1.0, -phi);
      CHECK(std::abs(oracle::std_sph_harm(1, -1, theta, phi) - y1m1) < 1e-13);
    }
  }
}

TEST_CASE("sphere cross section limits") {
  // Rayleigh regime: sigma -> 4 pi a^2 as ka -> 0.
  CHECK(oracle::sphere_plane_wave_sigma(0.005, 1.0) ==
        doctest::Approx(4.0 * kPi).epsilon(2e-2));
  // Geometric-optics regime: sigma -> 2 pi a^2 (slow ~ (ka)^{-2/3} approach).
  CHECK(oracle::sphere_plane_wave_sigma(80.0, 1.0) ==
        doctest::Approx(2.0 * kPi).epsilon(6e-2));
  // Scale invariance in ka.
  CHECK(oracle::sphere_plane_wave_sigma(1.0, 2.0) ==
        doctest::Approx(4.0 * oracle::sphere_plane_wave_sigma(2.0, 1.0))
            .epsilon(1e-12));
}

TEST_CASE("sphere_mode_solution reproduces its boundary trace") {
  const double a = 1.3, k = 1.7;
  for (int l = 0; l <= 4; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (double theta : {0.5, 1.6}) {
        const double phi = 2.4;
        const std::array<double, 3> point{
            a * std::sin(theta) * std::cos(phi),
            a * std::sin(theta) * std::sin(phi), a * std::cos(theta)};
        const Cx value = oracle::sphere_mode_solution(l, m, a, k, point);
        const Cx trace =
            sph_harm({l, m}, theta, phi) * spherical_hankel(l, k * a);
        CHECK(std::abs(value - trace) < 1e-12 * (1.0 + std::abs(trace)));
      }
    }
  }
}

TEST_CASE("sphere_mode_solution decays like an outgoing wave") {
  // |u| ~ |h_l(kr)| ~ 1/r far out; check the 1/r falloff ratio.
  const double k = 2.0;
  const std::array<double, 3> p1{0.0, 0.0, 50.0};
  const std::array<double, 3> p2{0.0, 0.0, 100.0};
  const Cx u1 = oracle::sphere_mode_solution(2, 1, 1.0, k, {30.0, 0.1, 7.0});
  CHECK(std::isfinite(u1.real()));
  const double r1 = std::abs(oracle::sphere_mode_solution(1, 0, 1.0, k, p1));
  const double r2 = std::abs(oracle::sphere_mode_solution(1, 0, 1.0, k, p2));
  CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("sphere_mode_normal_derivative closed relation") {
  const double a = 0.9, k = 2.2;
  for (int l = 0; l <= 5; ++l) {
    const Cx nd = oracle::sphere_mode_normal_derivative(l, 0, a, k, 1.1, 0.7);
    const Cx expected =
        k * spherical_hankel_derivative(l, k * a) * sph_harm({l, 0}, 1.1, 0.7);
    CHECK(std::abs(nd - expected) < 1e-11 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("brute_force_gram sphere closed form") {
  const double R = 1.4, k = 2.0;
  SphereSurface sphere(R);
  const Cx g00 = oracle::brute_force_gram(sphere, k, {0, 0}, {0, 0}, 400);
  CHECK(g00.real() ==
        doctest::Approx(kPi / (2.0 * k * k * R * R)).epsilon(1e-8));
  CHECK(std::abs(g00.imag()) < 1e-10);
  // Different azimuthal orders decouple on any axisymmetric body.
  const Cx cross = oracle::brute_force_gram(sphere, k, {1, 1}, {1, 0}, 200);
  CHECK(std::abs(cross) < 1e-10);
}

TEST_CASE("brute_force_gram is Hermitian in its arguments") {
  std::vector<Complex> coeffs(9, 0.0);
  coeffs[rank({0, 0})] = std::sqrt(4.0 * kPi);
  coeffs[rank({2, 0})] = 0.1;
  HarmonicStarSurface surface(2, coeffs);
  const Cx ij = oracle::brute_force_gram(surface, 1.5, {2, 1}, {1, 1}, 300);
  const Cx ji = oracle::brute_force_gram(surface, 1.5, {1, 1}, {2, 1}, 300);
  CHECK(std::abs(ij - std::conj(ji)) < 1e-9);
}

TEST_CASE("sphere_plane_wave_moment vanishes off-axis and matches quadrature") {
  const double k = 1.2, a = 1.0;
  CHECK(oracle::sphere_plane_wave_moment(k, a, {3, 1}) == Cx(0.0, 0.0));
  CHECK(oracle::sphere_plane_wave_moment(k, a, {2, -2}) == Cx(0.0, 0.0));
  const QuadratureRule rule = make_rule(48, 8);
  for (int l : {0, 1, 3}) {
    const Cx direct = integrate(rule, [&](double theta, double phi) {
      const Cx incident = std::polar(1.0, k * a * std::cos(theta));
      return incident * std::conj(sph_harm({l, 0}, theta, phi)) *
             std::conj(spherical_hankel(l, k * a));
    });
    const Cx value = oracle::sphere_plane_wave_moment(k, a, {l, 0});
    CHECK(std::abs(value - direct) < 1e-8 * (1.0 + std::abs(direct)));
  }
}
