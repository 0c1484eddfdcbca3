#pragma once

#include <complex>
#include <vector>

#include "waveharm/indexing.hpp"

namespace waveharm {

using Complex = std::complex<double>;

// Coefficient of the polynomial form of the outgoing spherical wave
//   h_n(t) = (e^{it}/t) * sum_{j=0..n} hhat(n,j) / t^j,
// hhat(n,0) = 1, hhat(n,m) = (i/2)^m (n+m)! / ((n-m)! m!).
// This normalization has h_n(t) ~ e^{it}/t for every n; the standard
// first-kind spherical Hankel function is h_n^{(1)}(t) = (-i)^{n+1} h_n(t).
// Cached; safe for concurrent readers.
Complex hankel_coeff(int n, int m);

// h_n(t) in the normalization above; t > 0 required.
Complex spherical_hankel(int n, double t);

// d/dt of spherical_hankel, term-by-term; t > 0 required.
Complex spherical_hankel_derivative(int n, double t);

// Standard spherical Bessel function of the first kind j_n(t), t >= 0.
// Downward recurrence for small arguments.
double spherical_bessel_j(int n, double t);

// Legendre polynomial P_n(x) via the three-term recurrence, |x| <= 1.
double legendre_P(int n, double x);

// Fully normalized spherical harmonic with Condon-Shortley phase:
// orthonormal w.r.t. sin(theta) dtheta dphi on S^2, and
// conj(Y_{l,m}) = (-1)^m Y_{l,-m}.
Complex sph_harm(AngularIndex idx, double theta, double phi);

// d/dtheta of sph_harm via the ladder identity
//   dY_{lm}/dtheta = ( sqrt((l-m)(l+m+1)) Y_{l,m+1} e^{-i phi}
//                    - sqrt((l+m)(l-m+1)) Y_{l,m-1} e^{+i phi} ) / 2.
Complex sph_harm_dtheta(AngularIndex idx, double theta, double phi);

// Normalized associated Legendre values Pbar_{l,m}(cos theta), m >= 0, with
// Condon-Shortley phase, for all l <= l_max: table[rank-like slot] where
// slot = l(l+1)/2 + m. Y_{lm} = table[slot(l,|m|)] * phase factors.
// Stable normalized upward recurrence in l at fixed m.
std::vector<double> assoc_legendre_table(int l_max, double theta);

inline int legendre_slot(int l, int m) { return l * (l + 1) / 2 + m; }

// Y_{lm}(theta,phi) from a precomputed assoc_legendre_table row.
Complex sph_harm_from_table(const std::vector<double>& table, AngularIndex idx,
                            double phi);

}  // namespace waveharm
