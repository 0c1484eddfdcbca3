#pragma once

#include <Eigen/Dense>

#include "waveharm/gram.hpp"

namespace waveharm {

// Triangular change of basis making the boundary restrictions orthonormal:
// PsiHat_n = sum_{k <= n} c_{nk} Psi_k with C G C^H = I, c_{nn} = 1/lambda_n
// real positive, c_{nk} = 0 for k > n.
struct BasisTransform {
  int l_max = 0;
  double k = 0.0;
  Eigen::MatrixXcd C;       // lower triangular
  Eigen::VectorXd lambda;   // lambda_n = 1 / c_nn

  int rank_count() const { return static_cast<int>(lambda.size()); }
};

// Cholesky route: G = L L^H, C = L^{-1}. Throws a conditioning error naming
// the offending rank when lambda_n^2 < 1e-13 * g_nn.
BasisTransform orthonormalize(const GramData& gram);

// The Gram-Schmidt recursion evaluated directly on the Gram entries;
// verification-only companion to the Cholesky route.
BasisTransform orthonormalize_recursive(const GramData& gram);

// PsiHat_n at a point given in spherical coordinates (any |r| > 0).
Complex evaluate_basis(const BasisTransform& transform, int n_rank,
                       double radius, double theta, double phi);

// Normal derivative of PsiHat_n at the boundary point of `sample`.
Complex evaluate_basis_normal_derivative(const BasisTransform& transform,
                                         int n_rank,
                                         const SurfaceSample& sample);

// Values of all PsiHat_n at the grid nodes (rows = ranks): C * wave_values.
Eigen::MatrixXcd orthonormal_wave_values(const BasisTransform& transform,
                                         const SurfaceGrid& grid);

struct DecayReport {
  double min_lambda = 0.0;
  int min_lambda_rank = 0;
  // Per column k: sup_n |c_nk| * l_k!  (bounded per the factorial estimate).
  std::vector<double> column_sup;
  double fitted_c1 = 0.0;  // max over columns of column_sup
  double fitted_c2 = 0.0;  // min lambda
};

DecayReport decay_report(const BasisTransform& transform);

}  // namespace waveharm
