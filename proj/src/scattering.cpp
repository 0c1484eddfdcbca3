#include "waveharm/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace waveharm {

namespace {
constexpr double kPi = 3.14159265358979323846;

// cos(theta) Y_{l,m} = alpha_{l,m} Y_{l+1,m} + alpha_{l-1,m} Y_{l-1,m} with
// alpha_{l,m} = sqrt(((l+1)^2 - m^2) / ((2l+1)(2l+3))).
double cos_coupling(int l, int m) {
  return std::sqrt((static_cast<double>(l + 1) * (l + 1) - m * m) /
                   ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

}  // namespace

SphericalPoint to_spherical(const std::array<double, 3>& point) {
  SphericalPoint s;
  s.radius = std::sqrt(point[0] * point[0] + point[1] * point[1] +
                       point[2] * point[2]);
  s.theta = s.radius > 0.0 ? std::acos(std::clamp(point[2] / s.radius, -1.0,
                                                  1.0))
                           : 0.0;
  s.phi = std::atan2(point[1], point[0]);
  if (s.phi < 0.0) s.phi += 2.0 * kPi;
  return s;
}

BoundaryField plane_wave_trace(const SurfaceGrid& grid, double k,
                               const std::array<double, 3>& direction) {
  const double norm = std::sqrt(direction[0] * direction[0] +
                                direction[1] * direction[1] +
                                direction[2] * direction[2]);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("plane-wave direction must be unit length");
  BoundaryField u0(grid.node_count());
  for (int node = 0; node < grid.node_count(); ++node) {
    const SurfaceSample& s = grid.samples[node];
    const double st = std::sin(s.theta);
    const double x = s.radius * st * std::cos(s.phi);
    const double y = s.radius * st * std::sin(s.phi);
    const double z = s.radius * std::cos(s.theta);
    u0[node] = std::polar(
        1.0, k * (x * direction[0] + y * direction[1] + z * direction[2]));
  }
  return u0;
}

BoundaryField mode_trace(const SurfaceGrid& grid, double k, AngularIndex q) {
  BoundaryField u0(grid.node_count());
  for (int node = 0; node < grid.node_count(); ++node) {
    const SurfaceSample& s = grid.samples[node];
    u0[node] = sph_harm(q, s.theta, s.phi) *
               spherical_hankel(q.l, k * s.radius);
  }
  return u0;
}

BoundaryField orthonormal_mode_trace(const BasisTransform& transform,
                                     const SurfaceGrid& grid,
                                     AngularIndex q) {
  const int r = rank(q);
  BoundaryField u0 = BoundaryField::Zero(grid.node_count());
  for (int node = 0; node < grid.node_count(); ++node) {
    const SurfaceSample& s = grid.samples[node];
    u0[node] =
        evaluate_basis(transform, r, s.radius, s.theta, s.phi);
  }
  return u0;
}

Eigen::VectorXcd boundary_moments(const SurfaceGrid& grid,
                                  const BoundaryField& u0, double k,
                                  int l_max) {
  if (u0.size() != grid.node_count())
    throw std::invalid_argument("boundary field size mismatch");
  const Eigen::MatrixXcd V = wave_values(grid, k, l_max);
  const Eigen::VectorXcd weighted =
      u0.cwiseProduct(node_weights(grid).cast<Complex>());
  return V.conjugate() * weighted;
}

SolutionExpansion expand(const Eigen::VectorXcd& u_moments,
                         const BasisTransform& transform) {
  if (u_moments.size() != transform.rank_count())
    throw std::invalid_argument("moment vector size mismatch");
  SolutionExpansion e;
  e.k = transform.k;
  e.l_max = transform.l_max;
  e.u = u_moments;
  e.uhat = transform.C.conjugate() * u_moments;
  return e;
}

FarField far_field(const SolutionExpansion& expansion,
                   const BasisTransform& transform) {
  const int n = transform.rank_count();
  FarField far;
  far.k = transform.k;
  far.l_max = transform.l_max;
  far.A = Eigen::VectorXcd::Zero(n);
  const double inv_k = 1.0 / transform.k;
  int next_level = 1;  // ranks < next_level^2 complete level next_level-1
  for (int row = 0; row < n; ++row) {
    // A_m <- A_m + (1/k) c_{row,m} uhat_row
    for (int m = 0; m <= row; ++m)
      far.A[m] += inv_k * transform.C(row, m) * expansion.uhat[row];
    if (row + 1 == next_level * next_level) {
      far.nested.push_back(far.A);
      ++next_level;
    }
  }
  return far;
}

SigmaPaths total_cross_section(const SolutionExpansion& expansion,
                               const BasisTransform& transform) {
  SigmaPaths result;
  const FarField far = far_field(expansion, transform);
  result.parseval = far.sigma_T();

  // Expanded double sum grouped by the outer rank n: with
  // w_n = sum_{p<=n} conj(c_np) u_p = uhat_n,
  // sigma_T = (1/k^2) sum_n sum_{m<=n} [ |c_nm w_n|^2
  //          + 2 Re( conj(c_nm w_n) sum_{m<=l<n} c_lm w_l ) ].
  const int n = transform.rank_count();
  const double inv_k2 = 1.0 / (transform.k * transform.k);
  double total = 0.0;
  // partial[m] = sum_{m <= l < n} c_lm w_l, updated as n grows.
  Eigen::VectorXcd partial = Eigen::VectorXcd::Zero(n);
  for (int row = 0; row < n; ++row) {
    const Complex w_row = expansion.uhat[row];
    for (int m = 0; m <= row; ++m) {
      const Complex term = transform.C(row, m) * w_row;
      total += std::norm(term) + 2.0 * std::real(std::conj(term) * partial[m]);
    }
    for (int m = 0; m <= row; ++m)
      partial[m] += transform.C(row, m) * w_row;
  }
  result.double_sum = inv_k2 * total;
  result.discrepancy = std::abs(result.parseval - result.double_sum);
  return result;
}

TransportResult transport_cross_section(const FarField& far) {
  TransportResult result;
  const int n = static_cast<int>(far.A.size());
  double cos_part = 0.0;
  double literal = 0.0;
  for (int r = 0; r < n; ++r) {
    const AngularIndex idx = unrank(r);
    const AngularIndex up{idx.l + 1, idx.m};
    // Printed coupling factor sqrt((l+m)(l-m) / ((2l+1)(2l-1))) at n itself.
    if (idx.l >= 1) {
      const double printed =
          std::sqrt((static_cast<double>(idx.l + idx.m) * (idx.l - idx.m)) /
                    ((2.0 * idx.l + 1.0) * (2.0 * idx.l - 1.0)));
      if (rank(up) < n)
        literal += printed *
                   std::real(far.A[r] * std::conj(far.A[rank(up)]));
    }
    // Correct coupling: int cos(theta)|f|^2 =
    //   2 sum_{lm} alpha_{lm} Re( conj(A_{lm}) A_{l+1,m} ).
    if (rank(up) < n)
      cos_part += 2.0 * cos_coupling(idx.l, idx.m) *
                  std::real(std::conj(far.A[r]) * far.A[rank(up)]);
  }
  result.composed = far.sigma_T() - cos_part;
  result.literal_sum = literal;

  // Angular quadrature of (1 - cos theta) |f|^2 over S^2.
  std::vector<double> nodes, weights;
  const int nt = 2 * far.l_max + 16;
  gauss_legendre(nt, 0.0, kPi, nodes, weights);
  const int np = 4 * far.l_max + 8;
  double integral = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double theta = nodes[it];
    double phi_sum = 0.0;
    for (int ip = 0; ip < np; ++ip) {
      const double phi = 2.0 * kPi * ip / np;
      phi_sum += std::norm(far_field_amplitude(far, theta, phi));
    }
    integral += weights[it] * (1.0 - std::cos(theta)) * std::sin(theta) *
                phi_sum * (2.0 * kPi / np);
  }
  result.quadrature = integral;
  return result;
}

Complex far_field_amplitude(const FarField& far, double theta, double phi) {
  const auto table = assoc_legendre_table(far.l_max, theta);
  Complex f = 0.0;
  for (int r = 0; r < far.A.size(); ++r)
    f += far.A[r] * sph_harm_from_table(table, unrank(r), phi);
  return f;
}

namespace {

void require_exterior(const Surface& surface, const SphericalPoint& s) {
  const double boundary = surface.radius(s.theta, s.phi);
  if (s.radius < boundary * (1.0 - 1e-12))
    throw std::domain_error("point lies inside the surface");
}

}  // namespace

Complex near_field(const SolutionExpansion& expansion,
                   const BasisTransform& transform, const Surface& surface,
                   const std::array<double, 3>& point) {
  const SphericalPoint s = to_spherical(point);
  require_exterior(surface, s);
  const int n = transform.rank_count();
  // Accumulate in the raw-wave basis: u(r) = sum_p (C^T uhat)_p Psi_p(r).
  const Eigen::VectorXcd coeff =
      transform.C.transpose() * expansion.uhat;
  const auto table = assoc_legendre_table(transform.l_max, s.theta);
  Complex value = 0.0;
  for (int p = 0; p < n; ++p) {
    const AngularIndex idx = unrank(p);
    value += coeff[p] * sph_harm_from_table(table, idx, s.phi) *
             spherical_hankel(idx.l, transform.k * s.radius);
  }
  return value;
}

Complex green_kernel(const BasisTransform& transform, const Surface& surface,
                     const std::array<double, 3>& r,
                     const std::array<double, 3>& t) {
  const SphericalPoint sr = to_spherical(r);
  const SphericalPoint st = to_spherical(t);
  require_exterior(surface, sr);
  require_exterior(surface, st);
  Complex sum = 0.0;
  for (int n = 0; n < transform.rank_count(); ++n)
    sum += evaluate_basis(transform, n, sr.radius, sr.theta, sr.phi) *
           std::conj(
               evaluate_basis(transform, n, st.radius, st.theta, st.phi));
  return sum;
}

Complex dtn_apply(const SolutionExpansion& expansion,
                  const BasisTransform& transform, const Surface& surface,
                  double theta, double phi) {
  const SurfaceSample sample = surface.sample(theta, phi);
  Complex value = 0.0;
  for (int n = 0; n < transform.rank_count(); ++n)
    value += expansion.uhat[n] *
             evaluate_basis_normal_derivative(transform, n, sample);
  return value;
}

double boundary_residual(const SolutionExpansion& expansion,
                         const BasisTransform& transform,
                         const SurfaceGrid& grid, const BoundaryField& u0,
                         int used_ranks) {
  const Eigen::MatrixXcd psi_hat = orthonormal_wave_values(transform, grid);
  Eigen::VectorXcd recon = Eigen::VectorXcd::Zero(grid.node_count());
  for (int n = 0; n < used_ranks; ++n)
    recon += expansion.uhat[n] * psi_hat.row(n).transpose();
  const Eigen::VectorXd w = node_weights(grid);
  const Eigen::VectorXcd diff = recon - u0;
  double norm2 = 0.0;
  for (int node = 0; node < grid.node_count(); ++node)
    norm2 += w[node] * std::norm(diff[node]);
  return std::sqrt(norm2);
}

}  // namespace waveharm
