#pragma once

#include <array>
#include <atomic>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "waveharm/indexing.hpp"
#include "waveharm/special.hpp"

namespace waveharm {

// One parameter-space sample of the boundary: radius, first partials of the
// radius, outward unit normal (in the local spherical frame e_r, e_theta,
// e_phi), and the surface density g^2 with dS = g^2 dtheta dphi.
struct SurfaceSample {
  double theta = 0.0;
  double phi = 0.0;
  double radius = 0.0;
  double dr_dtheta = 0.0;
  double dr_dphi = 0.0;
  std::array<double, 3> normal_spherical{};  // components on (e_r,e_theta,e_phi)
  double density = 0.0;                      // g^2
};

struct ValidationIssue {
  double theta = 0.0;
  double phi = 0.0;
  std::string what;
};

struct ValidationReport {
  bool ok = false;
  double min_radius = 0.0;
  double min_density = 0.0;
  std::vector<ValidationIssue> issues;
};

// Star-shaped boundary r = r(theta,phi). Immutable after construction; the
// evaluation counter is the instrumentation behind the k-sweep amortization
// checks.
class Surface {
 public:
  virtual ~Surface() = default;

  virtual double radius(double theta, double phi) const = 0;
  virtual SurfaceSample sample(double theta, double phi) const = 0;

  // Harmonic degree bound of the inverse radius, 0 for sphere/polyline.
  virtual int harmonic_degree() const = 0;

  virtual std::string describe() const = 0;

  ValidationReport validate(int grid_resolution) const;

  std::uint64_t eval_count() const { return evals_.load(); }
  void reset_eval_count() const { evals_.store(0); }

 protected:
  void count_eval() const { evals_.fetch_add(1, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> evals_{0};
};

// r(theta,phi) = 1 / sum_{l <= (N,N)} a_l Y_l(theta,phi). Coefficients must
// satisfy the reality constraint a_{l,-m} = (-1)^m conj(a_{l,m}).
class HarmonicStarSurface final : public Surface {
 public:
  // coeffs indexed by rank, size rank((N,N)) + 1 = (N+1)^2.
  HarmonicStarSurface(int degree, std::vector<Complex> coeffs);

  double radius(double theta, double phi) const override;
  SurfaceSample sample(double theta, double phi) const override;
  int harmonic_degree() const override { return degree_; }
  std::string describe() const override;

  const std::vector<Complex>& coeffs() const { return coeffs_; }

 private:
  double inverse_radius(double theta, double phi) const;

  int degree_;
  std::vector<Complex> coeffs_;
};

// Sphere of radius R, the a_00-only harmonic surface in closed form.
class SphereSurface final : public Surface {
 public:
  explicit SphereSurface(double radius);

  double radius(double theta, double phi) const override;
  SurfaceSample sample(double theta, double phi) const override;
  int harmonic_degree() const override { return 0; }
  std::string describe() const override;

  double sphere_radius() const { return radius_; }

 private:
  double radius_;
};

// Axisymmetric body of revolution of a polyline: on segment i
// (theta in [theta_{i-1}, theta_i]), a_i r cos(theta) + b_i r sin(theta) = f_i.
class RevolutionPolylineSurface final : public Surface {
 public:
  struct Segment {
    double a = 0.0;
    double b = 0.0;
    double f = 0.0;
  };

  RevolutionPolylineSurface(std::vector<double> breakpoints,
                            std::vector<Segment> segments);

  double radius(double theta, double phi) const override;
  SurfaceSample sample(double theta, double phi) const override;
  int harmonic_degree() const override { return 0; }
  std::string describe() const override;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Segment>& segments() const { return segments_; }

  // Segment owning theta; kinks resolve to the left segment.
  int segment_at(double theta) const;

 private:
  double segment_radius(int seg, double theta) const;

  std::vector<double> breakpoints_;
  std::vector<Segment> segments_;
};

// Two-segment bicone: apex height h on the +z axis, equator radius w,
// apex depth h on the -z axis. A convenient closed polyline test body.
std::shared_ptr<RevolutionPolylineSurface> make_bicone(double height,
                                                       double equator_radius);

}  // namespace waveharm
