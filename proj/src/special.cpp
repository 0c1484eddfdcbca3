#include "waveharm/special.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace waveharm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Populate-once cache of hhat rows, guarded for concurrent readers.
class HankelCoeffCache {
 public:
  Complex get(int n, int m) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<int>(rows_.size())) return rows_[n][m];
    }
    std::unique_lock lock(mutex_);
    while (static_cast<int>(rows_.size()) <= n) {
      const int deg = static_cast<int>(rows_.size());
      rows_.push_back(compute_row(deg));
    }
    return rows_[n][m];
  }

 private:
  static std::vector<Complex> compute_row(int n) {
    std::vector<Complex> row(n + 1);
    row[0] = 1.0;
    // hhat(n,m) = hhat(n,m-1) * (i/2) * (n+m)(n-m+1)/m
    const Complex half_i(0.0, 0.5);
    for (int m = 1; m <= n; ++m)
      row[m] = row[m - 1] * half_i *
               (static_cast<double>(n + m) * (n - m + 1) / m);
    return row;
  }

  std::shared_mutex mutex_;
  std::vector<std::vector<Complex>> rows_;
};

HankelCoeffCache& coeff_cache() {
  static HankelCoeffCache cache;
  return cache;
}

}  // namespace

Complex hankel_coeff(int n, int m) {
  if (n < 0 || m < 0 || m > n)
    throw std::invalid_argument("hankel_coeff requires 0 <= m <= n");
  return coeff_cache().get(n, m);
}

Complex spherical_hankel(int n, double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("spherical_hankel requires t > 0");
  // Horner in 1/t over the polynomial part.
  Complex poly = hankel_coeff(n, n);
  const double inv_t = 1.0 / t;
  for (int j = n - 1; j >= 0; --j) poly = poly * inv_t + hankel_coeff(n, j);
  return std::polar(1.0, t) * inv_t * poly;
}

Complex spherical_hankel_derivative(int n, double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("spherical_hankel_derivative requires t > 0");
  // h_n = e^{it} sum_j hhat_nj t^{-j-1}
  // h_n' = e^{it} sum_j hhat_nj [ i t^{-j-1} - (j+1) t^{-j-2} ]
  const double inv_t = 1.0 / t;
  Complex sum = 0.0;
  double power = inv_t;  // t^{-j-1}
  for (int j = 0; j <= n; ++j) {
    sum += hankel_coeff(n, j) *
           (Complex(0.0, 1.0) * power - (j + 1) * power * inv_t);
    power *= inv_t;
  }
  return std::polar(1.0, t) * sum;
}

double spherical_bessel_j(int n, double t) {
  if (n < 0 || t < 0.0)
    throw std::invalid_argument("spherical_bessel_j requires n >= 0, t >= 0");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  if (t < 1e-6) {
    // Leading series term t^n / (2n+1)!!
    double value = 1.0;
    for (int p = 1; p <= n; ++p) value *= t / (2 * p + 1);
    return value;
  }
  const double j0 = std::sin(t) / t;
  if (n == 0) return j0;
  const double j1 = std::sin(t) / (t * t) - std::cos(t) / t;
  if (n == 1) return j1;
  if (t > static_cast<double>(n)) {
    // Upward recurrence is stable for t > n.
    double prev = j0, curr = j1;
    for (int m = 2; m <= n; ++m) {
      double next = (2 * m - 1) / t * curr - prev;
      prev = curr;
      curr = next;
    }
    return curr;
  }
  // Miller downward recurrence, normalized by j_0.
  const int start = n + static_cast<int>(std::sqrt(40.0 * n)) + 20;
  double fp = 0.0, fc = 1e-30, target = 0.0;
  for (int m = start; m >= 0; --m) {
    double fm = (2 * m + 3) / t * fc - fp;
    fp = fc;
    fc = fm;
    if (m == n) target = fc;
    // Rescale to avoid overflow.
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      target *= 1e-250;
    }
  }
  return target * (j0 / fc);
}

double legendre_P(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_P requires n >= 0");
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::invalid_argument("legendre_P requires |x| <= 1");
  double prev = 1.0;
  if (n == 0) return prev;
  double curr = x;
  for (int m = 2; m <= n; ++m) {
    double next = ((2 * m - 1) * x * curr - (m - 1) * prev) / m;
    prev = curr;
    curr = next;
  }
  return curr;
}

std::vector<double> assoc_legendre_table(int l_max, double theta) {
  if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> table(legendre_slot(l_max, l_max) + 1);
  table[0] = 1.0 / std::sqrt(4.0 * kPi);
  // Diagonal: Pbar_{m,m} = -sqrt((2m+1)/(2m)) sin(theta) Pbar_{m-1,m-1}
  for (int m = 1; m <= l_max; ++m)
    table[legendre_slot(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s *
                                 table[legendre_slot(m - 1, m - 1)];
  // First superdiagonal: Pbar_{m+1,m} = sqrt(2m+3) cos(theta) Pbar_{m,m}
  for (int m = 0; m < l_max; ++m)
    table[legendre_slot(m + 1, m)] =
        std::sqrt(2.0 * m + 3.0) * x * table[legendre_slot(m, m)];
  // Upward in l: a_{lm} = sqrt((4l^2-1)/(l^2-m^2)),
  // Pbar_{lm} = a_{lm} (x Pbar_{l-1,m} - Pbar_{l-2,m}/a_{l-1,m})
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m + 2; l <= l_max; ++l) {
      const double a_lm =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double a_prev = std::sqrt((4.0 * (l - 1.0) * (l - 1.0) - 1.0) /
                                      ((l - 1.0) * (l - 1.0) - m * m));
      table[legendre_slot(l, m)] =
          a_lm * (x * table[legendre_slot(l - 1, m)] -
                  table[legendre_slot(l - 2, m)] / a_prev);
    }
  }
  return table;
}

Complex sph_harm_from_table(const std::vector<double>& table, AngularIndex idx,
                            double phi) {
  const int am = std::abs(idx.m);
  const double p = table[legendre_slot(idx.l, am)];
  Complex value = p * std::polar(1.0, am * phi);
  if (idx.m < 0) value = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(value);
  return value;
}

Complex sph_harm(AngularIndex idx, double theta, double phi) {
  if (!is_valid(idx))
    throw std::invalid_argument("sph_harm: invalid index " + to_string(idx));
  const auto table = assoc_legendre_table(idx.l, theta);
  return sph_harm_from_table(table, idx, phi);
}

Complex sph_harm_dtheta(AngularIndex idx, double theta, double phi) {
  if (!is_valid(idx))
    throw std::invalid_argument("sph_harm_dtheta: invalid index " +
                                to_string(idx));
  const int l = idx.l, m = idx.m;
  const auto table = assoc_legendre_table(l, theta);
  Complex up = 0.0, down = 0.0;
  if (m + 1 <= l)
    up = std::sqrt(static_cast<double>(l - m) * (l + m + 1)) *
         sph_harm_from_table(table, {l, m + 1}, phi) * std::polar(1.0, -phi);
  if (m - 1 >= -l)
    down = std::sqrt(static_cast<double>(l + m) * (l - m + 1)) *
           sph_harm_from_table(table, {l, m - 1}, phi) * std::polar(1.0, phi);
  return 0.5 * (up - down);
}

}  // namespace waveharm
