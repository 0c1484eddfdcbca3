#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waveharm/quadrature.hpp"
#include "waveharm/surface.hpp"

namespace waveharm {

// Boundary samples at the quadrature nodes, captured once so that every
// downstream operation (Gram assembly, boundary moments, k-sweeps) runs with
// zero further surface evaluations.
struct SurfaceGrid {
  QuadratureRule rule;
  std::vector<SurfaceSample> samples;  // theta-major, size n_theta * n_phi

  int node_count() const { return static_cast<int>(samples.size()); }
  const SurfaceSample& at(int it, int ip) const {
    return samples[static_cast<std::size_t>(it) * rule.n_phi() + ip];
  }
};

SurfaceGrid build_grid(const Surface& surface, QuadratureRule rule);

// Hermitian Gram matrix g_ij of the boundary-restricted waves
// Psi_i = Y_i h_{l_i}(k r) under the measure dtheta dphi, indexed by rank.
// When m0_block_only is set the matrix is indexed by degree l instead
// (axisymmetric polyline path).
struct GramData {
  int l_max = 0;
  double k = 0.0;
  bool m0_block_only = false;
  Eigen::MatrixXcd g;
};

// k-independent frequency moments p^m_ij with
//   g_ij = (-1)^{m_j} sum_{m=0}^{l_i+l_j} p^m_ij / k^{m+2}.
struct FrequencyMoments {
  int l_max = 0;
  std::uint64_t geometry_hash = 0;
  int n_theta = 0;
  int n_phi = 0;
  // moment(i,j) has l_i + l_j + 1 entries.
  std::vector<std::vector<Complex>> p;  // indexed i * rank_count + j

  int rank_count() const { return (l_max + 1) * (l_max + 1); }
  const std::vector<Complex>& at(int i, int j) const {
    return p[static_cast<std::size_t>(i) * rank_count() + j];
  }
};

// Matrix of raw wave values Psi_i at the grid nodes (rows = ranks).
Eigen::MatrixXcd wave_values(const SurfaceGrid& grid, double k, int l_max);

// Matrix of spherical harmonic values Y_i at the grid nodes.
Eigen::MatrixXcd harmonic_values(const SurfaceGrid& grid, int l_max);

// Node quadrature weights as a vector aligned with the grid layout.
Eigen::VectorXd node_weights(const SurfaceGrid& grid);

// Direct quadrature assembly.
GramData gram_quadrature(const SurfaceGrid& grid, double k, int l_max);

// Geometric moments; k never enters.
FrequencyMoments compute_moments(const SurfaceGrid& grid, int l_max);

// O(rank^2 * l_max) reassembly with no surface evaluations.
GramData assemble_from_moments(const FrequencyMoments& moments, double k);

// Multinomial-expansion path for harmonic star surfaces. Throws when the
// number of multi-index terms exceeds term_cap.
GramData gram_harmonic(const HarmonicStarSurface& surface, double k, int l_max,
                       HarmonicIntegralCache& cache,
                       std::uint64_t term_cap = 2'000'000);

struct PolylineGramOptions {
  bool sin_theta_weight = false;  // the printed variant; default is dtheta
  int nodes_per_segment = 0;      // 0 -> automatic
};

// Segment-wise path for bodies of revolution, m = 0 block, indexed by degree.
GramData gram_polyline(const RevolutionPolylineSurface& surface, double k,
                       int l_degree_max, const PolylineGramOptions& options = {});

// Extracts the m=0 block (degree-indexed) of a rank-indexed Gram matrix.
Eigen::MatrixXcd m0_block(const GramData& gram);

// FNV-1a hash of a canonical geometry description string.
std::uint64_t geometry_hash(const std::string& canonical);

// Versioned binary cache: header (magic "WHFM", version, geometry hash,
// l_max, n_theta, n_phi, rank) followed by the moment arrays as row-major
// float64 re/im pairs. Layout documented in the README.
void save_moments(const FrequencyMoments& moments, const std::string& path);
std::optional<FrequencyMoments> load_moments(const std::string& path,
                                             std::uint64_t expected_hash,
                                             int l_max, int n_theta, int n_phi);

}  // namespace waveharm
