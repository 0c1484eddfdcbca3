#pragma once

#include <array>
#include <complex>

#include "waveharm/surface.hpp"

namespace waveharm::oracle {

// Independent desk-scale ground truth. Deliberately shares no integration or
// special-function code with the main pipeline: standard-normalization
// spherical Bessel/Hankel functions via their own recurrences,
// std::assoc_legendre for the harmonics, composite Simpson for integrals.

using Complex = std::complex<double>;

// Standard first-kind spherical Bessel j_n(t).
double std_bessel_j(int n, double t);

// Standard second-kind spherical Bessel y_n(t) (upward recurrence).
double std_bessel_y(int n, double t);

// Standard first-kind spherical Hankel h_n^{(1)}(t) = j_n + i y_n.
Complex std_hankel1(int n, double t);

// Fully normalized Y_{lm} with Condon-Shortley phase, via std::assoc_legendre.
Complex std_sph_harm(int l, int m, double theta, double phi);

// Sound-soft sphere total cross section for a plane wave:
// (4 pi / k^2) sum_n (2n+1) |j_n(ka)/h_n^{(1)}(ka)|^2, truncated when terms
// fall below 1e-16 of the running sum.
double sphere_plane_wave_sigma(double k, double a);

// Exact radiating solution with boundary trace Y_lm(theta,phi) h_l(k a) in
// the polynomial normalization (h_l = i^{l+1} h_l^{(1)}): value at an
// exterior Cartesian point.
Complex sphere_mode_solution(int l, int m, double a, double k,
                             const std::array<double, 3>& point);

// Normal derivative of the mode solution on the sphere boundary:
// k h_l'(ka) Y_lm in the polynomial normalization.
Complex sphere_mode_normal_derivative(int l, int m, double a, double k,
                                      double theta, double phi);

// Independent Gram entry by composite Simpson on a (2n+1) x (2n) grid.
Complex brute_force_gram(const Surface& surface, double k, AngularIndex i,
                         AngularIndex j, int resolution);

// Plane-wave boundary moment u_p on a sphere via the Jacobi-Anger expansion
// of e^{ikz} and 1-D Simpson in theta (incidence along +z).
Complex sphere_plane_wave_moment(double k, double a, AngularIndex p);

}  // namespace waveharm::oracle
