#include "waveharm/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace waveharm::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex unit_imag_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Polynomial-normalized outgoing wave via the standard function:
// h_l = i^{l+1} h_l^{(1)}.
Complex poly_hankel(int l, double t) {
  return unit_imag_power(l + 1) * std_hankel1(l, t);
}

// Composite Simpson weights on n+1 equispaced points, n even.
std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    if (i == 0 || i == n)
      w[i] = h / 3.0;
    else if (i % 2 == 1)
      w[i] = 4.0 * h / 3.0;
    else
      w[i] = 2.0 * h / 3.0;
  }
  return w;
}

}  // namespace

double std_bessel_j(int n, double t) {
  if (n < 0 || t < 0.0) throw std::invalid_argument("std_bessel_j domain");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  if (t <= 2.0 || (n > 0 && t * t <= 2.0 * n)) {
    // Power series: j_n(t) = t^n/(2n+1)!! * sum_s (-t^2/2)^s / (s! c_s),
    // c_s = (2n+3)(2n+5)...(2n+1+2s). Alternating terms stay bounded here.
    double lead = 1.0;
    for (int p = 1; p <= n; ++p) lead *= t / (2 * p + 1);
    double term = 1.0, sum = 1.0;
    for (int s = 1; s < 500; ++s) {
      term *= -t * t / (2.0 * s * (2.0 * n + 2.0 * s + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
  }
  if (t <= n + 10.0) {
    // Transition region: downward (Miller) recurrence from a padded start,
    // normalized against j_0.
    const int start = n + 24 + static_cast<int>(std::sqrt(40.0 * t));
    double jp = 0.0;      // proxy j_{m+1}
    double jc = 1e-280;   // proxy j_m
    double target = 0.0;
    if (start == n) target = jc;
    for (int m = start; m >= 1; --m) {
      const double jm = (2 * m + 1) / t * jc - jp;
      jp = jc;
      jc = jm;  // now holds index m-1
      if (m - 1 == n) target = jc;
      if (std::abs(jc) > 1e260) {
        jc *= 1e-260;
        jp *= 1e-260;
        target *= 1e-260;
      }
    }
    return target / jc * (std::sin(t) / t);
  }
  double prev = std::sin(t) / t;
  double curr = std::sin(t) / (t * t) - std::cos(t) / t;
  if (n == 0) return prev;
  for (int m = 2; m <= n; ++m) {
    const double next = (2 * m - 1) / t * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double std_bessel_y(int n, double t) {
  if (n < 0 || !(t > 0.0)) throw std::invalid_argument("std_bessel_y domain");
  double prev = -std::cos(t) / t;
  if (n == 0) return prev;
  double curr = -std::cos(t) / (t * t) - std::sin(t) / t;
  for (int m = 2; m <= n; ++m) {
    const double next = (2 * m - 1) / t * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

Complex std_hankel1(int n, double t) {
  return {std_bessel_j(n, t), std_bessel_y(n, t)};
}

Complex std_sph_harm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  if (am > l) throw std::invalid_argument("std_sph_harm: |m| > l");
  double lognorm = std::log((2.0 * l + 1.0) / (4.0 * kPi));
  for (int p = l - am + 1; p <= l + am; ++p) lognorm -= std::log(p);
  const double norm = std::exp(0.5 * lognorm);
  // std::assoc_legendre omits the Condon-Shortley phase.
  const double p = std::assoc_legendre(l, am, std::cos(theta));
  Complex y = (am % 2 == 0 ? 1.0 : -1.0) * norm * p *
              std::polar(1.0, am * phi);
  if (m < 0) y = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
  return y;
}

double sphere_plane_wave_sigma(double k, double a) {
  if (!(k > 0.0) || !(a > 0.0))
    throw std::invalid_argument("sphere_plane_wave_sigma domain");
  const double ka = k * a;
  double sum = 0.0;
  for (int n = 0; n < 500; ++n) {
    const double ratio = std::abs(std_bessel_j(n, ka) / std_hankel1(n, ka));
    const double term = (2.0 * n + 1.0) * ratio * ratio;
    sum += term;
    if (n > ka + 5 && term < 1e-16 * sum) break;
  }
  return 4.0 * kPi / (k * k) * sum;
}

Complex sphere_mode_solution(int l, int m, double a, double k,
                             const std::array<double, 3>& point) {
  const double r = std::sqrt(point[0] * point[0] + point[1] * point[1] +
                             point[2] * point[2]);
  if (r < a * (1.0 - 1e-12))
    throw std::domain_error("point inside the sphere");
  const double theta = std::acos(std::min(1.0, std::max(-1.0, point[2] / r)));
  const double phi = std::atan2(point[1], point[0]);
  return std_sph_harm(l, m, theta, phi) * poly_hankel(l, k * r);
}

Complex sphere_mode_normal_derivative(int l, int m, double a, double k,
                                      double theta, double phi) {
  // d/dr [h_l(k r)] at r=a, radial normal: k h_l'(ka) Y_lm. Use the standard
  // derivative identity h' = h_{n-1} - (n+1)/t h_n, carried through the
  // i^{l+1} phase.
  const double t = k * a;
  Complex hp;
  if (l == 0)
    hp = -std_hankel1(1, t);
  else
    hp = std_hankel1(l - 1, t) -
         (static_cast<double>(l + 1) / t) * std_hankel1(l, t);
  return k * unit_imag_power(l + 1) * hp * std_sph_harm(l, m, theta, phi);
}

Complex brute_force_gram(const Surface& surface, double k, AngularIndex i,
                         AngularIndex j, int resolution) {
  int nt = resolution;
  if (nt % 2 == 1) ++nt;
  int np = resolution;
  if (np % 2 == 1) ++np;
  const auto wt = simpson_weights(nt, kPi / nt);
  const auto wp = simpson_weights(np, 2.0 * kPi / np);
  Complex total = 0.0;
  for (int it = 0; it <= nt; ++it) {
    const double theta = kPi * it / nt;
    for (int ip = 0; ip <= np; ++ip) {
      const double phi = 2.0 * kPi * ip / np;
      const double r = surface.radius(theta, phi);
      const Complex v = std_sph_harm(i.l, i.m, theta, phi) *
                        std::conj(std_sph_harm(j.l, j.m, theta, phi)) *
                        poly_hankel(i.l, k * r) *
                        std::conj(poly_hankel(j.l, k * r));
      total += wt[it] * wp[ip] * v;
    }
  }
  return total;
}

Complex sphere_plane_wave_moment(double k, double a, AngularIndex p) {
  if (p.m != 0) {
    // The phi integral of e^{ika cos theta} conj(Y_p) vanishes for m != 0.
    return 0.0;
  }
  const double ka = k * a;
  const int terms = static_cast<int>(ka + 40);
  const int nt = 400;
  const auto wt = simpson_weights(nt, kPi / nt);
  Complex integral = 0.0;
  for (int it = 0; it <= nt; ++it) {
    const double theta = kPi * it / nt;
    // Jacobi-Anger synthesis of the plane wave.
    Complex pw = 0.0;
    const double x = std::cos(theta);
    for (int n = 0; n <= terms; ++n)
      pw += (2.0 * n + 1.0) * unit_imag_power(n) * std_bessel_j(n, ka) *
            std::legendre(n, x);
    integral += wt[it] * pw * std::conj(std_sph_harm(p.l, 0, theta, 0.0));
  }
  return 2.0 * kPi * integral * std::conj(poly_hankel(p.l, ka));
}

}  // namespace waveharm::oracle
