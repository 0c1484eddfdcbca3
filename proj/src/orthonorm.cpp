#include "waveharm/orthonorm.hpp"

#include <cmath>
#include <stdexcept>

namespace waveharm {

BasisTransform orthonormalize(const GramData& gram) {
  const int n = static_cast<int>(gram.g.rows());
  Eigen::LLT<Eigen::MatrixXcd> llt(gram.g);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "Gram matrix is not numerically positive definite");
  Eigen::MatrixXcd L = llt.matrixL();
  for (int r = 0; r < n; ++r) {
    const double lam2 = std::norm(L(r, r));
    if (!(lam2 > 1e-13 * std::abs(gram.g(r, r).real())))
      throw std::runtime_error(
          "numerical semi-definiteness at rank " + std::to_string(r) +
          " (lambda^2 below threshold)");
  }
  BasisTransform t;
  t.l_max = gram.l_max;
  t.k = gram.k;
  t.lambda.resize(n);
  for (int r = 0; r < n; ++r) t.lambda[r] = L(r, r).real();
  // C = L^{-1}, lower triangular with positive real diagonal.
  t.C = L.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXcd::Identity(n, n));
  return t;
}

BasisTransform orthonormalize_recursive(const GramData& gram) {
  // Gram-Schmidt in rank order on the Gram entries:
  //   proj_k = (Psi_n, PsiHat_k) = sum_{p<=k} conj(c_kp) g_np,
  //   lambda_n^2 = g_nn - sum_{k<n} |proj_k|^2,
  //   c_nm = (delta_nm - sum_{k<n} proj_k c_km) / lambda_n.
  const int n = static_cast<int>(gram.g.rows());
  BasisTransform t;
  t.l_max = gram.l_max;
  t.k = gram.k;
  t.C = Eigen::MatrixXcd::Zero(n, n);
  t.lambda.resize(n);
  for (int row = 0; row < n; ++row) {
    Eigen::VectorXcd proj(row);
    for (int k = 0; k < row; ++k) {
      Complex sum = 0.0;
      for (int p = 0; p <= k; ++p)
        sum += std::conj(t.C(k, p)) * gram.g(row, p);
      proj[k] = sum;
    }
    double lam2 = gram.g(row, row).real();
    for (int k = 0; k < row; ++k) lam2 -= std::norm(proj[k]);
    if (!(lam2 > 1e-13 * std::abs(gram.g(row, row).real())))
      throw std::runtime_error("numerical semi-definiteness at rank " +
                               std::to_string(row));
    const double lambda = std::sqrt(lam2);
    t.lambda[row] = lambda;
    for (int m = 0; m < row; ++m) {
      Complex sum = 0.0;
      for (int k = m; k < row; ++k) sum += proj[k] * t.C(k, m);
      t.C(row, m) = -sum / lambda;
    }
    t.C(row, row) = 1.0 / lambda;
  }
  return t;
}

Complex evaluate_basis(const BasisTransform& transform, int n_rank,
                       double radius, double theta, double phi) {
  if (!(radius > 0.0))
    throw std::invalid_argument("evaluation point at the origin");
  const AngularIndex n_idx = unrank(n_rank);
  const auto table = assoc_legendre_table(n_idx.l, theta);
  Complex value = 0.0;
  for (int k = 0; k <= n_rank; ++k) {
    const Complex c = transform.C(n_rank, k);
    if (c == 0.0) continue;
    const AngularIndex idx = unrank(k);
    value += c * sph_harm_from_table(table, idx, phi) *
             spherical_hankel(idx.l, transform.k * radius);
  }
  return value;
}

Complex evaluate_basis_normal_derivative(const BasisTransform& transform,
                                         int n_rank,
                                         const SurfaceSample& sample) {
  const double r = sample.radius;
  const double st = std::sin(sample.theta);
  const auto& nvec = sample.normal_spherical;
  const AngularIndex n_idx = unrank(n_rank);
  const auto table = assoc_legendre_table(n_idx.l, sample.theta);
  Complex total = 0.0;
  for (int k = 0; k <= n_rank; ++k) {
    const Complex c = transform.C(n_rank, k);
    if (c == 0.0) continue;
    const AngularIndex idx = unrank(k);
    const double t = transform.k * r;
    const Complex h = spherical_hankel(idx.l, t);
    const Complex hp = spherical_hankel_derivative(idx.l, t);
    const Complex y = sph_harm_from_table(table, idx, sample.phi);
    const Complex y_theta = sph_harm_dtheta(idx, sample.theta, sample.phi);
    // grad Psi = k h' Y e_r + (h/r) dY/dtheta e_theta
    //          + (h/(r sin)) i m Y e_phi
    Complex grad_n = nvec[0] * transform.k * hp * y +
                     nvec[1] * h / r * y_theta;
    if (idx.m != 0) {
      if (st == 0.0)
        throw std::runtime_error("normal derivative at a pole");
      grad_n += nvec[2] * h / (r * st) *
                Complex(0.0, static_cast<double>(idx.m)) * y;
    }
    total += c * grad_n;
  }
  return total;
}

Eigen::MatrixXcd orthonormal_wave_values(const BasisTransform& transform,
                                         const SurfaceGrid& grid) {
  const Eigen::MatrixXcd V = wave_values(grid, transform.k, transform.l_max);
  return transform.C.triangularView<Eigen::Lower>() * V;
}

DecayReport decay_report(const BasisTransform& transform) {
  DecayReport report;
  const int n = transform.rank_count();
  report.min_lambda = transform.lambda.minCoeff(&report.min_lambda_rank);
  report.fitted_c2 = report.min_lambda;
  report.column_sup.assign(n, 0.0);
  for (int col = 0; col < n; ++col) {
    double factorial = 1.0;
    const int l = unrank(col).l;
    for (int t = 2; t <= l; ++t) factorial *= t;
    for (int row = col; row < n; ++row)
      report.column_sup[col] = std::max(report.column_sup[col],
                                        std::abs(transform.C(row, col)) *
                                            factorial);
    report.fitted_c1 = std::max(report.fitted_c1, report.column_sup[col]);
  }
  return report;
}

}  // namespace waveharm
