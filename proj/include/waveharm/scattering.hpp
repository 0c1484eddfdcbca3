#pragma once

#include <Eigen/Dense>
#include <array>

#include "waveharm/orthonorm.hpp"

namespace waveharm {

// Boundary data sampled at the grid nodes.
using BoundaryField = Eigen::VectorXcd;

// u0 = e^{ik <r, theta0>} at the grid nodes; direction must be unit length.
BoundaryField plane_wave_trace(const SurfaceGrid& grid, double k,
                               const std::array<double, 3>& direction);

// Trace of the raw wave Psi_q (or the orthonormal PsiHat_q) on the grid.
BoundaryField mode_trace(const SurfaceGrid& grid, double k, AngularIndex q);
BoundaryField orthonormal_mode_trace(const BasisTransform& transform,
                                     const SurfaceGrid& grid, AngularIndex q);

// Raw boundary moments u_p = int u0 conj(Y_p) conj(h_{l_p}(k r)) dtheta dphi.
Eigen::VectorXcd boundary_moments(const SurfaceGrid& grid,
                                  const BoundaryField& u0, double k,
                                  int l_max);

// Orthonormal coefficients uhat = conj(C) u and the raw moments they came
// from.
struct SolutionExpansion {
  double k = 0.0;
  int l_max = 0;
  Eigen::VectorXcd u;     // raw moments u_p
  Eigen::VectorXcd uhat;  // uhat_n = sum_{p<=n} conj(c_np) u_p
};

SolutionExpansion expand(const Eigen::VectorXcd& u_moments,
                         const BasisTransform& transform);

// Far-field coefficients A_m over ranks up to L, built with the incremental
// recursion A_m^L = A_m^{L-1} + (1/k) c_{Lm} uhat_L so every intermediate
// truncation is available.
struct FarField {
  double k = 0.0;
  int l_max = 0;
  Eigen::VectorXcd A;
  // A_m^{L} for the nested truncations L = (0,0),(1,1),...: partial(t) holds
  // the coefficients using only ranks < (t+1)^2.
  std::vector<Eigen::VectorXcd> nested;

  double sigma_T() const { return A.squaredNorm(); }
};

FarField far_field(const SolutionExpansion& expansion,
                   const BasisTransform& transform);

// sigma_T two ways: Parseval over the A_m, and the expanded double sum
// grouped by the outer rank. The two are algebraic rearrangements.
struct SigmaPaths {
  double parseval = 0.0;
  double double_sum = 0.0;
  double discrepancy = 0.0;
};

SigmaPaths total_cross_section(const SolutionExpansion& expansion,
                               const BasisTransform& transform);

// Transport cross section for incidence along +z.
struct TransportResult {
  // Composed value sigma_T - int <q,z> |f|^2, from the Legendre coupling
  // coefficients.
  double composed = 0.0;
  // The printed single-sum coupling term, reported as-is.
  double literal_sum = 0.0;
  // Independent check: S^2 quadrature of (1 - cos theta) |f|^2 sin theta.
  double quadrature = 0.0;
};

TransportResult transport_cross_section(const FarField& far);

// Scattering amplitude f(q) = sum_m A_m Y_m at a direction.
Complex far_field_amplitude(const FarField& far, double theta, double phi);

// Truncated series u(r) = sum_n uhat_n PsiHat_n(r) at an exterior point given
// in Cartesian coordinates. Throws for interior points (radial comparison).
Complex near_field(const SolutionExpansion& expansion,
                   const BasisTransform& transform, const Surface& surface,
                   const std::array<double, 3>& point);

// Partial Green kernel sum_{n<=L} PsiHat_n(r) conj(PsiHat_n(t)).
Complex green_kernel(const BasisTransform& transform, const Surface& surface,
                     const std::array<double, 3>& r,
                     const std::array<double, 3>& t);

// Truncated Dirichlet-to-Neumann value sum_n uhat_n dPsiHat_n/dn at the
// boundary point (theta, phi).
Complex dtn_apply(const SolutionExpansion& expansion,
                  const BasisTransform& transform, const Surface& surface,
                  double theta, double phi);

// L2(dtheta dphi) residual of the truncated near field on the boundary,
// using only ranks < used_ranks (pass transform.rank_count() for all).
double boundary_residual(const SolutionExpansion& expansion,
                         const BasisTransform& transform,
                         const SurfaceGrid& grid, const BoundaryField& u0,
                         int used_ranks);

// Spherical coordinates of a Cartesian point.
struct SphericalPoint {
  double radius = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};
SphericalPoint to_spherical(const std::array<double, 3>& point);

}  // namespace waveharm
