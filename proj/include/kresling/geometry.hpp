#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace kresling {

using Point3 = Eigen::Vector3d;

/// Rotation sense of a module's top polygon under deflation.
enum class Handedness { CW, CCW };

/// Geometric definition of one Kresling module as molded.
///
/// The module axis is +y. Bottom polygon vertex k sits at angle 2*pi*k/n
/// measured from +z towards +x on a circle of radius `a`; the top polygon is
/// the same polygon rotated by theta_u and lifted to height h(theta_u). The
/// hypotenuse crease `b` joins bottom vertex k to top vertex k.
class ModulePattern {
 public:
  /// Throws GeometryError when the pattern violates a construction rule
  /// (a, b, c > 0, n_sides >= 4, 0 < delta0 < 90 deg, b <= 2a).
  ModulePattern(double a, double b, double c, double delta0_deg, int n_sides = 6,
                Handedness handedness = Handedness::CW);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double delta0_deg() const noexcept { return delta0_deg_; }
  double delta0() const noexcept;  ///< radians
  int n_sides() const noexcept { return n_sides_; }
  Handedness handedness() const noexcept { return handedness_; }

  double b_over_a() const noexcept { return b_ / a_; }
  /// Largest admissible relative rotation, 2*asin(b/2a).
  double max_rotation() const noexcept;
  /// As-molded relative rotation at delta0.
  double rest_rotation() const noexcept;
  /// As-molded height b*sin(delta0).
  double rest_height() const noexcept;

  ModulePattern with_handedness(Handedness h) const;

  bool operator==(const ModulePattern&) const = default;

 private:
  double a_;
  double b_;
  double c_;
  double delta0_deg_;
  int n_sides_;
  Handedness handedness_;
};

/// Instantaneous configuration of a module. Construct through `make_state`.
struct ModuleState {
  double theta_u;  ///< radians
  double h;        ///< mm
};

ModuleState make_state(const ModulePattern& pattern, double theta_u);

/// Dihedral rotation angles of the three fold families, radians in [0, pi].
struct FoldAngles {
  double qm;
  double qr;
  double rm;
};

/// Vertex set of the truss. `bottom[0]` is M, `bottom[1]` is P, `top[0]` is Q,
/// `top[1]` is R; `center` is G = (0, h/2, 0).
struct ModuleVertices {
  std::vector<Point3> bottom;
  std::vector<Point3> top;
  Point3 center;

  /// Rigid rotation of every vertex about the module axis.
  ModuleVertices rotated_about_axis(double angle) const;
  /// Flattened list: bottom ring, top ring, then the center.
  std::vector<Point3> flattened() const;
};

/// Closed oriented surface of the chamber: two polygon caps and 2n wall
/// triangles, each face listed counter-clockwise seen from outside.
struct ChamberFace {
  std::vector<Point3> corners;
};

ModuleVertices module_vertices(const ModulePattern& pattern, double theta_u);

/// All 2n polygon vertices followed by G.
std::vector<Point3> vertex_positions(const ModulePattern& pattern, double theta_u);

double rotation_from_height(const ModulePattern& pattern, double h);
double height_from_rotation(const ModulePattern& pattern, double theta_u);

std::vector<ChamberFace> chamber_faces(const ModuleVertices& vertices);

/// Pyramid decomposition from G over every face of the chamber.
double chamber_volume(const ModuleVertices& vertices);
double chamber_volume(const ModulePattern& pattern, double theta_u);

FoldAngles fold_angles(const ModuleVertices& vertices);
FoldAngles fold_angles(const ModulePattern& pattern, double theta_u);

/// Hexagon-only closed form of the chamber volume, kept as a cross-check of
/// the pyramid decomposition. Throws DomainError for n_sides != 6.
double hexagon_volume_closed_form(const ModulePattern& pattern, double theta_u);

}  // namespace kresling
