#pragma once

#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "waveharm/indexing.hpp"
#include "waveharm/special.hpp"

namespace waveharm {

// Gauss-Legendre nodes and weights on [a,b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Tensor-product rule on [0,pi] x [0,2pi) under the measure dtheta dphi:
// Gauss-Legendre in theta, uniform (trapezoidal/periodic) in phi.
struct QuadratureRule {
  std::vector<double> theta_nodes;
  std::vector<double> theta_weights;
  std::vector<double> phi_nodes;
  double phi_weight = 0.0;  // 2*pi / n_phi

  int n_theta() const { return static_cast<int>(theta_nodes.size()); }
  int n_phi() const { return static_cast<int>(phi_nodes.size()); }
};

QuadratureRule make_rule(int n_theta, int n_phi);

// Default resolution for a basis truncation degree l_max on a surface of
// harmonic degree surface_degree.
QuadratureRule default_rule(int l_max, int surface_degree);

// Tensor-product quadrature of f(theta, phi). Throws if f is non-finite at a
// node, reporting the node location.
Complex integrate(const QuadratureRule& rule,
                  const std::function<Complex(double, double)>& f);

// I^d = int_0^pi int_0^{2pi} prod_l Y_l^{d(l)} dtheta dphi, cached by d.
// The phi factor of each harmonic is e^{i m phi}, so the phi integral is the
// uniform-grid sum of a single frequency; the theta integral uses the rule's
// Gauss nodes. Refuses when the rule cannot resolve the total degree of d.
class HarmonicIntegralCache {
 public:
  explicit HarmonicIntegralCache(QuadratureRule rule);

  Complex product_integral(const MultiIndex& d);

  const QuadratureRule& rule() const { return rule_; }

 private:
  Complex compute(const MultiIndex& d) const;

  QuadratureRule rule_;
  mutable std::mutex mutex_;
  std::map<std::string, Complex> cache_;
  // Pbar tables per theta node, grown on demand.
  mutable std::vector<std::vector<double>> legendre_tables_;
  mutable int table_l_max_ = -1;
  void ensure_tables(int l_max) const;
};

}  // namespace waveharm
