#include "waveharm/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace waveharm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre requires n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
    nodes[i] = mid - scale * x;
    nodes[n - 1 - i] = mid + scale * x;
    weights[i] = scale * w;
    weights[n - 1 - i] = scale * w;
  }
}

QuadratureRule make_rule(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("rule sizes must be positive");
  QuadratureRule rule;
  gauss_legendre(n_theta, 0.0, kPi, rule.theta_nodes, rule.theta_weights);
  rule.phi_nodes.resize(n_phi);
  for (int i = 0; i < n_phi; ++i) rule.phi_nodes[i] = 2.0 * kPi * i / n_phi;
  rule.phi_weight = 2.0 * kPi / n_phi;
  return rule;
}

QuadratureRule default_rule(int l_max, int surface_degree) {
  const int n_theta = 4 * (l_max + surface_degree) + 24;
  const int n_phi = 4 * l_max + 4 * surface_degree + 16;
  return make_rule(n_theta, n_phi);
}

Complex integrate(const QuadratureRule& rule,
                  const std::function<Complex(double, double)>& f) {
  Complex total = 0.0;
  for (int it = 0; it < rule.n_theta(); ++it) {
    const double theta = rule.theta_nodes[it];
    Complex phi_sum = 0.0;
    for (int ip = 0; ip < rule.n_phi(); ++ip) {
      const double phi = rule.phi_nodes[ip];
      const Complex v = f(theta, phi);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("non-finite integrand at theta=" +
                                 std::to_string(theta) +
                                 " phi=" + std::to_string(phi));
      phi_sum += v;
    }
    total += rule.theta_weights[it] * rule.phi_weight * phi_sum;
  }
  return total;
}

HarmonicIntegralCache::HarmonicIntegralCache(QuadratureRule rule)
    : rule_(std::move(rule)) {}

void HarmonicIntegralCache::ensure_tables(int l_max) const {
  if (l_max <= table_l_max_) return;
  legendre_tables_.resize(rule_.n_theta());
  for (int it = 0; it < rule_.n_theta(); ++it)
    legendre_tables_[it] = assoc_legendre_table(l_max, rule_.theta_nodes[it]);
  table_l_max_ = l_max;
}

Complex HarmonicIntegralCache::compute(const MultiIndex& d) const {
  int total_degree = 0;
  int net_m = 0;
  int l_max = 0;
  for (const auto& [slot, count] : d.entries()) {
    const AngularIndex idx = unrank(slot);
    total_degree += idx.l * count;
    net_m += idx.m * count;
    l_max = std::max(l_max, idx.l);
  }
  // Accuracy contract: Gauss rule must over-resolve the theta degree and the
  // uniform phi grid must not alias the net frequency.
  if (2 * rule_.n_theta() - 1 < total_degree + 8 ||
      rule_.n_phi() <= std::abs(net_m))
    throw std::runtime_error(
        "quadrature rule under-resolves multi-index of total degree " +
        std::to_string(total_degree));
  // The phi-dependence of the product is the single frequency e^{i net_m phi};
  // on the uniform grid the phi sum is 2*pi when net_m = 0 and zero otherwise.
  if (net_m != 0) return 0.0;
  ensure_tables(l_max);
  double theta_integral = 0.0;
  for (int it = 0; it < rule_.n_theta(); ++it) {
    const auto& table = legendre_tables_[it];
    double prod = 1.0;
    double sign = 1.0;
    for (const auto& [slot, count] : d.entries()) {
      const AngularIndex idx = unrank(slot);
      const int am = std::abs(idx.m);
      const double p = table[legendre_slot(idx.l, am)];
      for (int c = 0; c < count; ++c) prod *= p;
      // Y_{l,-m} = (-1)^m conj(Y_{l,m}); the conj only flips the phi phase,
      // already accounted for in net_m, but the sign must be kept.
      if (idx.m < 0 && am % 2 == 1 && count % 2 == 1) sign = -sign;
    }
    theta_integral += rule_.theta_weights[it] * sign * prod;
  }
  return Complex(2.0 * kPi * theta_integral, 0.0);
}

Complex HarmonicIntegralCache::product_integral(const MultiIndex& d) {
  const std::string key = d.key();
  std::lock_guard lock(mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Complex value = compute(d);
  return cache_.emplace(key, value).first->second;
}

}  // namespace waveharm
