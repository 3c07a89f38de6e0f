#include "kresling/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "kresling/errors.hpp"
#include "kresling/units.hpp"

namespace kresling {

namespace {

constexpr double kRotationSlack = 1e-12;


Point3 ring_point(double radius, double angle, double height) {
  return {radius * std::sin(angle), height, radius * std::cos(angle)};
}

// atan2 keeps full precision near 0 and pi, where acos of the cosine does not.
double angle_between(const Point3& u, const Point3& v) {
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

// Outward normal (unnormalised) of triangle (p0, p1, p2); throws on a
// degenerate panel.
Point3 panel_normal(const Point3& p0, const Point3& p1, const Point3& p2,
                    const char* name) {
  const Point3 n = (p1 - p0).cross(p2 - p0);
  const double scale = (p1 - p0).squaredNorm() + (p2 - p0).squaredNorm();
  if (n.norm() <= 1e-14 * scale) {
    throw SingularConfigurationError(
        fmt::format("panel {} is degenerate (zero-area cross product)", name));
  }
  return n;
}

}  // namespace

ModulePattern::ModulePattern(double a, double b, double c, double delta0_deg, int n_sides,
                             Handedness handedness)
    : a_(a), b_(b), c_(c), delta0_deg_(delta0_deg), n_sides_(n_sides), handedness_(handedness) {
  if (!(a > 0.0)) throw GeometryError(fmt::format("a must be > 0 (got a = {})", a));
  if (!(b > 0.0)) throw GeometryError(fmt::format("b must be > 0 (got b = {})", b));
  if (!(c > 0.0)) throw GeometryError(fmt::format("c must be > 0 (got c = {})", c));
  if (n_sides < 4) {
    throw GeometryError(fmt::format("n_sides must be >= 4 (got n_sides = {})", n_sides));
  }
  if (!(delta0_deg > 0.0 && delta0_deg < 90.0)) {
    throw GeometryError(
        fmt::format("delta0 must satisfy 0 < delta0 < 90 deg (got delta0 = {})", delta0_deg));
  }
  if (b > 2.0 * a) {
    throw GeometryError(fmt::format(
        "b/a must satisfy b/a <= 2 so that theta_max = 2*asin(b/2a) exists (got b/a = {})",
        b / a));
  }
}

double ModulePattern::delta0() const noexcept { return units::rad(delta0_deg_); }

double ModulePattern::max_rotation() const noexcept {
  return 2.0 * std::asin(std::min(1.0, b_ / (2.0 * a_)));
}

double ModulePattern::rest_rotation() const noexcept {
  return 2.0 * std::asin(std::min(1.0, b_ * std::cos(delta0()) / (2.0 * a_)));
}

double ModulePattern::rest_height() const noexcept { return b_ * std::sin(delta0()); }

ModulePattern ModulePattern::with_handedness(Handedness h) const {
  ModulePattern copy = *this;
  copy.handedness_ = h;
  return copy;
}

ModuleState make_state(const ModulePattern& pattern, double theta_u) {
  return {theta_u, height_from_rotation(pattern, theta_u)};
}

ModuleVertices ModuleVertices::rotated_about_axis(double angle) const {
  const Eigen::AngleAxisd rotation(angle, Point3::UnitY());
  ModuleVertices out = *this;
  for (auto& p : out.bottom) p = rotation * p;
  for (auto& p : out.top) p = rotation * p;
  out.center = rotation * center;
  return out;
}

std::vector<Point3> ModuleVertices::flattened() const {
  std::vector<Point3> out;
  out.reserve(bottom.size() + top.size() + 1);
  out.insert(out.end(), bottom.begin(), bottom.end());
  out.insert(out.end(), top.begin(), top.end());
  out.push_back(center);
  return out;
}

double height_from_rotation(const ModulePattern& pattern, double theta_u) {
  const double theta_max = pattern.max_rotation();
  if (!(theta_u >= 0.0)) {
    throw DomainError(fmt::format("theta_u must be >= 0 deg (got {} deg)", units::deg(theta_u)));
  }
  if (theta_u > theta_max + kRotationSlack) {
    throw DomainError(fmt::format("theta_u must be <= theta_max = {} deg (got {} deg)",
                                  units::deg(theta_max), units::deg(theta_u)));
  }
  const double chord = 2.0 * pattern.a() * std::sin(0.5 * theta_u);
  const double b = pattern.b();
  return std::sqrt(std::max(0.0, (b - chord) * (b + chord)));
}

double rotation_from_height(const ModulePattern& pattern, double h) {
  const double b = pattern.b();
  if (!(h >= 0.0 && h <= b)) {
    throw DomainError(fmt::format("h must satisfy 0 <= h <= b = {} mm (got h = {} mm)", b, h));
  }
  const double chord = std::sqrt((b - h) * (b + h));
  const double ratio = chord / (2.0 * pattern.a());
  if (ratio > 1.0 + 1e-12) {
    throw GeometryError(fmt::format(
        "pattern cannot close: sqrt(b^2 - h^2) = {} mm exceeds 2a = {} mm", chord,
        2.0 * pattern.a()));
  }
  return 2.0 * std::asin(std::min(1.0, ratio));
}

ModuleVertices module_vertices(const ModulePattern& pattern, double theta_u) {
  const double h = height_from_rotation(pattern, theta_u);
  const int n = pattern.n_sides();
  ModuleVertices v;
  v.bottom.reserve(n);
  v.top.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * units::kPi * k / n;
    v.bottom.push_back(ring_point(pattern.a(), phi, 0.0));
    v.top.push_back(ring_point(pattern.a(), phi + theta_u, h));
  }
  v.center = Point3(0.0, 0.5 * h, 0.0);
  return v;
}

std::vector<Point3> vertex_positions(const ModulePattern& pattern, double theta_u) {
  return module_vertices(pattern, theta_u).flattened();
}

std::vector<ChamberFace> chamber_faces(const ModuleVertices& v) {
  const std::size_t n = v.bottom.size();
  std::vector<ChamberFace> faces;
  faces.reserve(2 * n + 2);

  ChamberFace bottom_cap;
  for (std::size_t k = n; k-- > 0;) bottom_cap.corners.push_back(v.bottom[k]);
  faces.push_back(std::move(bottom_cap));
  faces.push_back({v.top});

  // Quad (M_k, M_k+1, Q_k+1, Q_k) split along the diagonal M_k -- Q_k+1.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    faces.push_back({{v.bottom[k], v.bottom[next], v.top[next]}});
    faces.push_back({{v.bottom[k], v.top[next], v.top[k]}});
  }
  return faces;
}

double chamber_volume(const ModuleVertices& v) {
  double volume = 0.0;
  for (const auto& face : chamber_faces(v)) {
    Point3 area = Point3::Zero();
    Point3 centroid = Point3::Zero();
    const std::size_t m = face.corners.size();
    for (std::size_t i = 0; i < m; ++i) {
      area += face.corners[i].cross(face.corners[(i + 1) % m]);
      centroid += face.corners[i];
    }
    area *= 0.5;
    centroid /= static_cast<double>(m);
    volume += (centroid - v.center).dot(area) / 3.0;
  }
  // Flat-folded states are coplanar; roundoff must not leave a negative volume.
  return std::max(0.0, volume);
}

double chamber_volume(const ModulePattern& pattern, double theta_u) {
  return chamber_volume(module_vertices(pattern, theta_u));
}

FoldAngles fold_angles(const ModuleVertices& v) {
  const std::size_t n = v.bottom.size();
  const Point3& m = v.bottom[0];
  const Point3& p = v.bottom[1];
  const Point3& t = v.bottom[n - 1];
  const Point3& q = v.top[0];
  const Point3& r = v.top[1];

  // Outward panel normals: MRQ shares QM with TMQ, QR with the top cap and RM
  // with MPR.
  const Point3 n_mrq = panel_normal(m, r, q, "MRQ");
  const Point3 n_tmq = panel_normal(t, m, q, "TMQ");
  const Point3 n_mpr = panel_normal(m, p, r, "MPR");
  const Point3 n_top = Point3::UnitY();

  return {angle_between(n_mrq, n_tmq), angle_between(n_mrq, n_top),
          angle_between(n_mrq, n_mpr)};
}

FoldAngles fold_angles(const ModulePattern& pattern, double theta_u) {
  return fold_angles(module_vertices(pattern, theta_u));
}

double hexagon_volume_closed_form(const ModulePattern& pattern, double theta_u) {
  if (pattern.n_sides() != 6) {
    throw DomainError(fmt::format("closed-form volume requires n_sides = 6 (got {})",
                                  pattern.n_sides()));
  }
  const double a = pattern.a();
  const double b = pattern.b();
  const double sqrt3 = std::sqrt(3.0);
  const double s1 = std::cos(theta_u + units::kPi / 6.0);
  const double s3 = b * b - 2.0 * a * a + 2.0 * a * a * std::cos(theta_u);
  const double s2 = std::sqrt(std::max(0.0, s3) / (b * b));
  const double a4 = std::pow(a, 4);
  const double sin30 = std::sin(theta_u + units::kPi / 6.0);

  const double radicand = 4.0 * std::abs(s3) * std::pow(a * b * s1, 2) +
                          4.0 * std::abs(s3) * std::pow(a * b * sin30, 2) +
                          a4 * b * b * std::pow(2.0 * s1 - sqrt3, 2);
  const double c = std::cos(theta_u);
  const double s = std::sin(theta_u);
  const double denominator = 4.0 * b *
                             std::sqrt(a4 * c * c - 2.0 * a4 + 2.0 * a * a * b * b + a4 * c +
                                       sqrt3 * a4 * s - sqrt3 * a4 * c * s);
  const double walls =
      std::sqrt(2.0) * a * a * b * (2.0 * s1 + sqrt3) * s2 * std::sqrt(radicand) / denominator;
  const double caps = sqrt3 * a * a * s2 * b / 2.0;
  return walls + caps;
}

}  // namespace kresling
