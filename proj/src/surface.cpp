#include "waveharm/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace waveharm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Normal and density from radius and its partials, per
// dS = |r| sqrt([|r|^2 + r_theta^2] sin^2 theta + r_phi^2) dtheta dphi,
// outward normal ~ r^2 sin(theta) e_r - r r_theta sin(theta) e_theta
//                  - r r_phi e_phi.
void fill_geometry(SurfaceSample& s) {
  const double r = s.radius;
  const double st = std::sin(s.theta);
  const double nr = r * r * st;
  const double nt = -r * s.dr_dtheta * st;
  const double np = -r * s.dr_dphi;
  const double norm = std::sqrt(nr * nr + nt * nt + np * np);
  s.density = norm;  // |x_theta x x_phi| = g^2
  if (norm > 0.0) {
    s.normal_spherical = {nr / norm, nt / norm, np / norm};
  } else {
    // Poles of a pure-radial surface: the normal degenerates with sin(theta);
    // fall back to the radial direction.
    s.normal_spherical = {1.0, 0.0, 0.0};
  }
}

}  // namespace

ValidationReport Surface::validate(int grid_resolution) const {
  ValidationReport report;
  report.ok = true;
  report.min_radius = std::numeric_limits<double>::infinity();
  report.min_density = std::numeric_limits<double>::infinity();
  const int n = std::max(grid_resolution, 8);
  for (int it = 0; it <= n; ++it) {
    // Stay strictly inside (0,pi) so polyline kinks and poles are probed from
    // one side.
    const double theta = kPi * (it + 0.5) / (n + 1);
    for (int ip = 0; ip < n; ++ip) {
      const double phi = 2.0 * kPi * ip / n;
      double r = 0.0;
      try {
        SurfaceSample s = sample(theta, phi);
        r = s.radius;
        report.min_density = std::min(report.min_density, s.density);
      } catch (const std::exception& e) {
        report.ok = false;
        report.issues.push_back({theta, phi, e.what()});
        continue;
      }
      if (!(r > 0.0) || !std::isfinite(r)) {
        report.ok = false;
        report.issues.push_back({theta, phi, "non-positive or infinite radius"});
      }
      report.min_radius = std::min(report.min_radius, r);
    }
  }
  return report;
}

HarmonicStarSurface::HarmonicStarSurface(int degree,
                                         std::vector<Complex> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree_ < 0) throw std::invalid_argument("degree must be >= 0");
  const std::size_t expected = static_cast<std::size_t>((degree_ + 1) *
                                                        (degree_ + 1));
  if (coeffs_.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " coefficients");
  // Reality of the inverse radius: a_{l,-m} = (-1)^m conj(a_{l,m}).
  for (int l = 0; l <= degree_; ++l) {
    for (int m = 1; m <= l; ++m) {
      const Complex plus = coeffs_[rank({l, m})];
      const Complex minus = coeffs_[rank({l, -m})];
      const Complex expected_minus =
          (m % 2 == 0 ? 1.0 : -1.0) * std::conj(plus);
      if (std::abs(minus - expected_minus) >
          1e-12 * (1.0 + std::abs(plus)))
        throw std::invalid_argument(
            "coefficients violate the reality constraint at l=" +
            std::to_string(l) + " m=" + std::to_string(m));
    }
  }
}

double HarmonicStarSurface::inverse_radius(double theta, double phi) const {
  const auto table = assoc_legendre_table(degree_, theta);
  Complex sum = 0.0;
  for (int r = 0; r < static_cast<int>(coeffs_.size()); ++r)
    sum += coeffs_[r] * sph_harm_from_table(table, unrank(r), phi);
  return sum.real();
}

double HarmonicStarSurface::radius(double theta, double phi) const {
  count_eval();
  const double rho = inverse_radius(theta, phi);
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::runtime_error("non-positive inverse radius at theta=" +
                             std::to_string(theta) +
                             " phi=" + std::to_string(phi));
  return 1.0 / rho;
}

SurfaceSample HarmonicStarSurface::sample(double theta, double phi) const {
  count_eval();
  const auto table = assoc_legendre_table(degree_, theta);
  Complex rho = 0.0, rho_t = 0.0, rho_p = 0.0;
  for (int r = 0; r < static_cast<int>(coeffs_.size()); ++r) {
    const AngularIndex idx = unrank(r);
    const Complex y = sph_harm_from_table(table, idx, phi);
    rho += coeffs_[r] * y;
    rho_t += coeffs_[r] * sph_harm_dtheta(idx, theta, phi);
    rho_p += coeffs_[r] * (Complex(0.0, 1.0) * static_cast<double>(idx.m)) * y;
  }
  if (!(rho.real() > 0.0))
    throw std::runtime_error("non-positive inverse radius");
  SurfaceSample s;
  s.theta = theta;
  s.phi = phi;
  s.radius = 1.0 / rho.real();
  // r = 1/rho, so r_x = -rho_x / rho^2.
  s.dr_dtheta = -rho_t.real() * s.radius * s.radius;
  s.dr_dphi = -rho_p.real() * s.radius * s.radius;
  fill_geometry(s);
  return s;
}

std::string HarmonicStarSurface::describe() const {
  return "harmonic(N=" + std::to_string(degree_) + ")";
}

SphereSurface::SphereSurface(double radius) : radius_(radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("sphere radius must be positive");
}

double SphereSurface::radius(double, double) const {
  count_eval();
  return radius_;
}

SurfaceSample SphereSurface::sample(double theta, double phi) const {
  count_eval();
  SurfaceSample s;
  s.theta = theta;
  s.phi = phi;
  s.radius = radius_;
  fill_geometry(s);
  return s;
}

std::string SphereSurface::describe() const {
  std::ostringstream out;
  out << "sphere(R=" << radius_ << ")";
  return out.str();
}

RevolutionPolylineSurface::RevolutionPolylineSurface(
    std::vector<double> breakpoints, std::vector<Segment> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
  if (breakpoints_.size() != segments_.size() + 1)
    throw std::invalid_argument("need one more breakpoint than segments");
  if (segments_.empty()) throw std::invalid_argument("no segments");
  if (std::abs(breakpoints_.front()) > 1e-14 ||
      std::abs(breakpoints_.back() - kPi) > 1e-12)
    throw std::invalid_argument("breakpoints must span [0, pi]");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (breakpoints_[i] < breakpoints_[i - 1])
      throw std::invalid_argument("breakpoints must be non-decreasing");
  for (const Segment& seg : segments_)
    if (seg.f == 0.0)
      throw std::invalid_argument("segment with f = 0");
  // Continuity of the profile at interior breakpoints.
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const double theta = breakpoints_[i];
    const double left = segment_radius(static_cast<int>(i) - 1, theta);
    const double right = segment_radius(static_cast<int>(i), theta);
    if (!(std::isfinite(left) && std::isfinite(right)) ||
        std::abs(left - right) > 1e-9 * (1.0 + std::abs(left)))
      throw std::invalid_argument("profile discontinuous at breakpoint " +
                                  std::to_string(theta));
  }
}

int RevolutionPolylineSurface::segment_at(double theta) const {
  // Kinks resolve to the left segment: theta in (theta_{i-1}, theta_i].
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (theta <= breakpoints_[i]) return static_cast<int>(i) - 1;
  return static_cast<int>(segments_.size()) - 1;
}

double RevolutionPolylineSurface::segment_radius(int seg, double theta) const {
  const Segment& s = segments_[seg];
  const double den = s.a * std::cos(theta) + s.b * std::sin(theta);
  return s.f / den;
}

double RevolutionPolylineSurface::radius(double theta, double /*phi*/) const {
  count_eval();
  const double r = segment_radius(segment_at(theta), theta);
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::runtime_error("non-positive radius on polyline at theta=" +
                             std::to_string(theta));
  return r;
}

SurfaceSample RevolutionPolylineSurface::sample(double theta,
                                                double /*phi*/) const {
  count_eval();
  const int seg = segment_at(theta);
  const Segment& sg = segments_[seg];
  const double den = sg.a * std::cos(theta) + sg.b * std::sin(theta);
  const double r = sg.f / den;
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::runtime_error("non-positive radius on polyline");
  SurfaceSample s;
  s.theta = theta;
  s.phi = 0.0;
  s.radius = r;
  // d/dtheta [f / (a cos + b sin)] = f (a sin - b cos) / den^2
  s.dr_dtheta = sg.f * (sg.a * std::sin(theta) - sg.b * std::cos(theta)) /
                (den * den);
  s.dr_dphi = 0.0;
  fill_geometry(s);
  return s;
}

std::string RevolutionPolylineSurface::describe() const {
  return "revolution(" + std::to_string(segments_.size()) + " segments)";
}

std::shared_ptr<RevolutionPolylineSurface> make_bicone(double height,
                                                       double equator_radius) {
  // Segment 1: line from (z=h, rho=0) to (z=0, rho=w):
  //   z/h + rho/w = 1 -> (1/h) r cos + (1/w) r sin = 1.
  // Segment 2: mirror below the equator.
  std::vector<double> breakpoints = {0.0, kPi / 2.0, kPi};
  std::vector<RevolutionPolylineSurface::Segment> segments = {
      {1.0 / height, 1.0 / equator_radius, 1.0},
      {-1.0 / height, 1.0 / equator_radius, 1.0}};
  return std::make_shared<RevolutionPolylineSurface>(std::move(breakpoints),
                                                     std::move(segments));
}

}  // namespace waveharm
