#include "waveharm/gram.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace waveharm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cauchy product of the two hhat rows:
// conv(li, lj, m) = sum_{l=0}^{m} hhat(li,l) conj(hhat(lj,m-l)),
// with hhat(n,j) = 0 for j > n.
Complex hhat_convolution(int li, int lj, int m) {
  Complex sum = 0.0;
  const int lo = std::max(0, m - lj);
  const int hi = std::min(m, li);
  for (int l = lo; l <= hi; ++l)
    sum += hankel_coeff(li, l) * std::conj(hankel_coeff(lj, m - l));
  return sum;
}

int parity_sign(int m) { return (m % 2 == 0) ? 1 : -1; }

}  // namespace

SurfaceGrid build_grid(const Surface& surface, QuadratureRule rule) {
  SurfaceGrid grid;
  grid.rule = std::move(rule);
  grid.samples.reserve(static_cast<std::size_t>(grid.rule.n_theta()) *
                       grid.rule.n_phi());
  for (int it = 0; it < grid.rule.n_theta(); ++it)
    for (int ip = 0; ip < grid.rule.n_phi(); ++ip)
      grid.samples.push_back(
          surface.sample(grid.rule.theta_nodes[it], grid.rule.phi_nodes[ip]));
  return grid;
}

Eigen::MatrixXcd harmonic_values(const SurfaceGrid& grid, int l_max) {
  const int rank_count = (l_max + 1) * (l_max + 1);
  const int nodes = grid.node_count();
  Eigen::MatrixXcd values(rank_count, nodes);
  for (int it = 0; it < grid.rule.n_theta(); ++it) {
    const auto table = assoc_legendre_table(l_max, grid.rule.theta_nodes[it]);
    for (int ip = 0; ip < grid.rule.n_phi(); ++ip) {
      const int node = it * grid.rule.n_phi() + ip;
      const double phi = grid.rule.phi_nodes[ip];
      for (int r = 0; r < rank_count; ++r)
        values(r, node) = sph_harm_from_table(table, unrank(r), phi);
    }
  }
  return values;
}

Eigen::MatrixXcd wave_values(const SurfaceGrid& grid, double k, int l_max) {
  Eigen::MatrixXcd values = harmonic_values(grid, l_max);
  const int nodes = grid.node_count();
  std::vector<Complex> h(l_max + 1);
  for (int node = 0; node < nodes; ++node) {
    const double t = k * grid.samples[node].radius;
    for (int l = 0; l <= l_max; ++l) h[l] = spherical_hankel(l, t);
    for (int r = 0; r < values.rows(); ++r)
      values(r, node) *= h[unrank(r).l];
  }
  return values;
}

Eigen::VectorXd node_weights(const SurfaceGrid& grid) {
  Eigen::VectorXd w(grid.node_count());
  for (int it = 0; it < grid.rule.n_theta(); ++it)
    for (int ip = 0; ip < grid.rule.n_phi(); ++ip)
      w[it * grid.rule.n_phi() + ip] =
          grid.rule.theta_weights[it] * grid.rule.phi_weight;
  return w;
}

GramData gram_quadrature(const SurfaceGrid& grid, double k, int l_max) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  Eigen::MatrixXcd V = wave_values(grid, k, l_max);
  const Eigen::VectorXd w = node_weights(grid);
  V = V * w.cwiseSqrt().asDiagonal();
  GramData out;
  out.l_max = l_max;
  out.k = k;
  out.g = V * V.adjoint();
  // Enforce exact Hermitian symmetry of the stored matrix.
  out.g = (out.g + out.g.adjoint().eval()) / 2.0;
  return out;
}

FrequencyMoments compute_moments(const SurfaceGrid& grid, int l_max) {
  FrequencyMoments moments;
  moments.l_max = l_max;
  moments.n_theta = grid.rule.n_theta();
  moments.n_phi = grid.rule.n_phi();
  const int rank_count = moments.rank_count();
  moments.p.resize(static_cast<std::size_t>(rank_count) * rank_count);

  Eigen::MatrixXcd U = harmonic_values(grid, l_max);
  const Eigen::VectorXd w = node_weights(grid);
  U = U * w.cwiseSqrt().asDiagonal();

  const int nodes = grid.node_count();
  Eigen::VectorXd inv_r(nodes);
  for (int node = 0; node < nodes; ++node)
    inv_r[node] = 1.0 / grid.samples[node].radius;

  Eigen::VectorXd power = inv_r.array().square();  // r^{-(m+2)}, m = 0
  for (int i = 0; i < rank_count; ++i)
    for (int j = 0; j < rank_count; ++j)
      moments.p[static_cast<std::size_t>(i) * rank_count + j].resize(
          unrank(i).l + unrank(j).l + 1);

  for (int m = 0; m <= 2 * l_max; ++m) {
    const Eigen::MatrixXcd geom =
        U * power.asDiagonal() * U.adjoint();  // int Y_i conj(Y_j) r^{-(m+2)}
    for (int i = 0; i < rank_count; ++i) {
      const int li = unrank(i).l;
      for (int j = 0; j < rank_count; ++j) {
        const AngularIndex jj = unrank(j);
        if (m > li + jj.l) continue;
        // p^m_ij = conv * int Y_i Y_{conj(j)} / r^{m+2}; the geometric factor
        // above carries conj(Y_j) = (-1)^{m_j} Y_{conj(j)}.
        moments.p[static_cast<std::size_t>(i) * rank_count + j][m] =
            hhat_convolution(li, jj.l, m) *
            (static_cast<double>(parity_sign(jj.m)) * geom(i, j));
      }
    }
    power = power.cwiseProduct(inv_r);
  }
  return moments;
}

GramData assemble_from_moments(const FrequencyMoments& moments, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const int rank_count = moments.rank_count();
  GramData out;
  out.l_max = moments.l_max;
  out.k = k;
  out.g = Eigen::MatrixXcd::Zero(rank_count, rank_count);
  std::vector<double> inv_k_pow(2 * moments.l_max + 3);
  inv_k_pow[0] = 1.0;
  for (std::size_t t = 1; t < inv_k_pow.size(); ++t)
    inv_k_pow[t] = inv_k_pow[t - 1] / k;
  for (int i = 0; i < rank_count; ++i) {
    for (int j = 0; j < rank_count; ++j) {
      const auto& pm = moments.at(i, j);
      Complex sum = 0.0;
      for (int m = static_cast<int>(pm.size()) - 1; m >= 0; --m)
        sum += pm[m] * inv_k_pow[m + 2];
      out.g(i, j) = static_cast<double>(parity_sign(unrank(j).m)) * sum;
    }
  }
  return out;
}

GramData gram_harmonic(const HarmonicStarSurface& surface, double k, int l_max,
                       HarmonicIntegralCache& cache, std::uint64_t term_cap) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const int N = surface.harmonic_degree();
  const AngularIndex bound{N, N};
  const int rank_count = (l_max + 1) * (l_max + 1);

  // Combinatorial guard over the whole assembly.
  std::uint64_t total_terms = 0;
  for (int m = 0; m <= 2 * l_max; ++m) {
    std::uint64_t per_capacity = multi_index_count(m + 2, bound);
    std::uint64_t pairs = 0;
    for (int i = 0; i < rank_count; ++i)
      for (int j = 0; j <= i; ++j)
        if (unrank(i).l + unrank(j).l >= m) ++pairs;
    total_terms += per_capacity * pairs;
    if (total_terms > term_cap)
      throw std::runtime_error(
          "gram_harmonic term count exceeds cap; use gram_quadrature");
  }

  // Enumerations and multinomial-weighted surface powers per capacity.
  const auto& coeffs = surface.coeffs();
  std::vector<std::vector<std::pair<MultiIndex, Complex>>> expansions(
      2 * l_max + 1);
  for (int m = 0; m <= 2 * l_max; ++m) {
    for (MultiIndex& d : enumerate_multi_indices(m + 2, bound)) {
      Complex weight = static_cast<double>(multinomial(d));
      for (const auto& [slot, count] : d.entries()) {
        const Complex a = coeffs[slot];
        for (int c = 0; c < count; ++c) weight *= a;
      }
      if (weight != 0.0) expansions[m].emplace_back(std::move(d), weight);
    }
  }

  GramData out;
  out.l_max = l_max;
  out.k = k;
  out.g = Eigen::MatrixXcd::Zero(rank_count, rank_count);
  for (int i = 0; i < rank_count; ++i) {
    const AngularIndex ii = unrank(i);
    for (int j = 0; j <= i; ++j) {
      const AngularIndex jj = unrank(j);
      Complex entry = 0.0;
      double inv_k = 1.0 / (k * k);
      for (int m = 0; m <= ii.l + jj.l; ++m) {
        Complex geometric = 0.0;
        for (const auto& [d, weight] : expansions[m]) {
          MultiIndex extended = d;
          extended.add(ii);
          extended.add(conjugate(jj));
          geometric += weight * cache.product_integral(extended);
        }
        entry += inv_k * hhat_convolution(ii.l, jj.l, m) * geometric;
        inv_k /= k;
      }
      entry *= static_cast<double>(parity_sign(jj.m));
      out.g(i, j) = entry;
      if (j != i) out.g(j, i) = std::conj(entry);
    }
  }
  return out;
}

GramData gram_polyline(const RevolutionPolylineSurface& surface, double k,
                       int l_degree_max, const PolylineGramOptions& options) {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  const int R = l_degree_max + 1;
  const auto& segments = surface.segments();
  const auto& breaks = surface.breakpoints();
  const int n_nodes = options.nodes_per_segment > 0
                          ? options.nodes_per_segment
                          : 6 * l_degree_max + 40;

  GramData out;
  out.l_max = l_degree_max;
  out.k = k;
  out.m0_block_only = true;
  out.g = Eigen::MatrixXcd::Zero(R, R);

  std::vector<double> nodes, weights;
  for (std::size_t p = 0; p < segments.size(); ++p) {
    if (breaks[p + 1] - breaks[p] < 1e-14) continue;
    gauss_legendre(n_nodes, breaks[p], breaks[p + 1], nodes, weights);
    const auto& seg = segments[p];
    // T^p_{ij,lm} accumulated on the fly: per node, the powers of cos/sin and
    // the degree-only harmonics Pbar_{l,0}.
    const int m_max = 2 * l_degree_max;
    // T[l][s] = int Y_i Y_j cos^l sin^s (w) dtheta, gathered per (i,j).
    for (int i = 0; i < R; ++i) {
      for (int j = 0; j <= i; ++j) {
        std::vector<std::vector<double>> T(
            m_max + 3, std::vector<double>(m_max + 3, 0.0));
        for (int q = 0; q < n_nodes; ++q) {
          const double theta = nodes[q];
          const auto table = assoc_legendre_table(l_degree_max, theta);
          const double yij = table[legendre_slot(i, 0)] *
                             table[legendre_slot(j, 0)];
          const double c = std::cos(theta), s = std::sin(theta);
          double base = weights[q] * yij;
          if (options.sin_theta_weight) base *= s;
          double cpow = 1.0;
          for (int l = 0; l <= i + j + 2; ++l) {
            double spow = 1.0;
            for (int sm = 0; sm <= i + j + 2 - l; ++sm) {
              T[l][sm] += base * cpow * spow;
              spow *= s;
            }
            cpow *= c;
          }
        }
        Complex entry = 0.0;
        double inv_k = 1.0 / (k * k);
        for (int m = 0; m <= i + j; ++m) {
          // Binomial expansion of (a cos + b sin)^{m+2} / f^{m+2}.
          double binom = 1.0;
          double geometric = 0.0;
          for (int l = 0; l <= m + 2; ++l) {
            geometric += binom * std::pow(seg.a, l) *
                         std::pow(seg.b, m + 2 - l) * T[l][m + 2 - l];
            binom = binom * (m + 2 - l) / (l + 1);
          }
          geometric /= std::pow(seg.f, m + 2);
          entry += inv_k * hhat_convolution(i, j, m) * geometric;
          inv_k /= k;
        }
        // phi integral of the axisymmetric integrand.
        entry *= 2.0 * kPi;
        out.g(i, j) += entry;
        if (j != i) out.g(j, i) += std::conj(entry);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd m0_block(const GramData& gram) {
  if (gram.m0_block_only) return gram.g;
  const int R = gram.l_max + 1;
  Eigen::MatrixXcd block(R, R);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j)
      block(i, j) = gram.g(rank({i, 0}), rank({j, 0}));
  return block;
}

std::uint64_t geometry_hash(const std::string& canonical) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

namespace {
constexpr char kMagic[4] = {'W', 'H', 'F', 'M'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void save_moments(const FrequencyMoments& moments, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  auto write_u32 = [&](std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
  };
  auto write_u64 = [&](std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
  };
  write_u32(kVersion);
  write_u64(moments.geometry_hash);
  write_u32(static_cast<std::uint32_t>(moments.l_max));
  write_u32(static_cast<std::uint32_t>(moments.n_theta));
  write_u32(static_cast<std::uint32_t>(moments.n_phi));
  write_u32(static_cast<std::uint32_t>(moments.rank_count()));
  for (const auto& pm : moments.p) {
    for (const Complex& v : pm) {
      const double re = v.real(), im = v.imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::optional<FrequencyMoments> load_moments(const std::string& path,
                                             std::uint64_t expected_hash,
                                             int l_max, int n_theta,
                                             int n_phi) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
  auto read_u32 = [&]() {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
  };
  auto read_u64 = [&]() {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
  };
  if (read_u32() != kVersion) return std::nullopt;
  FrequencyMoments moments;
  moments.geometry_hash = read_u64();
  moments.l_max = static_cast<int>(read_u32());
  moments.n_theta = static_cast<int>(read_u32());
  moments.n_phi = static_cast<int>(read_u32());
  const int rank_count = static_cast<int>(read_u32());
  if (!in || moments.geometry_hash != expected_hash ||
      moments.l_max != l_max || moments.n_theta != n_theta ||
      moments.n_phi != n_phi || rank_count != moments.rank_count())
    return std::nullopt;
  moments.p.resize(static_cast<std::size_t>(rank_count) * rank_count);
  for (int i = 0; i < rank_count; ++i) {
    for (int j = 0; j < rank_count; ++j) {
      auto& pm = moments.p[static_cast<std::size_t>(i) * rank_count + j];
      pm.resize(unrank(i).l + unrank(j).l + 1);
      for (Complex& v : pm) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        v = Complex(re, im);
      }
    }
  }
  if (!in) return std::nullopt;
  return moments;
}

}  // namespace waveharm
