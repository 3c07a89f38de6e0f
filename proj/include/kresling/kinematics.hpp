#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kresling/geometry.hpp"

namespace kresling {

// Closed-form rotation limits of a single module. All angles in radians.

/// Relative rotation of the as-molded module, 2*asin(b*cos(delta)/2a).
double unfold_rotation(double delta, double b_over_a);
/// Additional twist between the rest state and the flat-folded state.
double folding_rotation(double delta, double b_over_a);
/// 2*asin(b/2a); independent of delta.
double max_rotation(double b_over_a);
/// Maximum rotation with an internal skeleton of thickness ratio k = t_s/b.
double skeleton_max_rotation(double b_over_a, double k, double delta0);

/// Torsional crease constants, N/rad per mm of crease.
struct CreaseConstants {
  double k_c1 = 2.0;   ///< thick creases (QR, QM families)
  double k_c2 = 0.25;  ///< thin creases (RM family)

  bool operator==(const CreaseConstants&) const = default;
};

enum class ActuatorType { TypeI, TypeII, TypeIII, Custom };

/// Serial stack of modules. Type I: one handedness throughout. Type II: first
/// half one handedness, second half the other. Type III: alternating, so every
/// module is opposite to its mirror image about the stack midpoint.
class ActuatorSpec {
 public:
  ActuatorSpec(std::vector<ModulePattern> modules, ActuatorType type,
               CreaseConstants crease = {}, double skeleton_ratio = 0.0);

  /// Builds `count` copies of `pattern` with handedness assigned by `type`.
  /// `pattern.handedness()` is the handedness of the first module.
  static ActuatorSpec make(ActuatorType type, const ModulePattern& pattern, int count,
                           CreaseConstants crease = {}, double skeleton_ratio = 0.0);

  const std::vector<ModulePattern>& modules() const noexcept { return modules_; }
  std::size_t size() const noexcept { return modules_.size(); }
  ActuatorType type() const noexcept { return type_; }
  const CreaseConstants& crease() const noexcept { return crease_; }
  double skeleton_ratio() const noexcept { return skeleton_ratio_; }

  /// True when every module shares a, b, c, delta0 and n_sides.
  bool uniform_geometry() const noexcept;

  bool operator==(const ActuatorSpec&) const = default;

 private:
  std::vector<ModulePattern> modules_;
  ActuatorType type_;
  CreaseConstants crease_;
  double skeleton_ratio_;
};

/// Rigid transform made of a rotation about the module axis (+y) and a
/// translation. The unwrapped rotation angle is carried alongside the matrix so
/// multi-turn chains keep their net twist.
class Pose {
 public:
  Pose() = default;
  Pose(double angle, const Eigen::Vector3d& translation);

  static Pose identity() { return Pose(); }

  const Eigen::Matrix4d& matrix() const noexcept { return matrix_; }
  Eigen::Matrix3d rotation() const { return matrix_.topLeftCorner<3, 3>(); }
  Eigen::Vector3d translation() const { return matrix_.topRightCorner<3, 1>(); }
  /// Unwrapped net rotation about +y, radians.
  double rotation_angle() const noexcept { return angle_; }

  Pose operator*(const Pose& rhs) const;
  Pose inverse() const;

 private:
  Eigen::Matrix4d matrix_ = Eigen::Matrix4d::Identity();
  double angle_ = 0.0;
};

/// Elemental rotation about +y.
Eigen::Matrix3d rotation_y(double theta);

enum class HeightModel {
  Exact,       ///< h from the truss relation
  Linear  ///< h = b - (b/60 deg)*|theta|, only meaningful when theta_max = 60 deg
};

struct PoseResult {
  Pose pose;
  std::vector<std::string> warnings;
};

/// Sign convention: CW modules take positive theta, CCW negative.
double signed_rotation(Handedness handedness, double magnitude);

PoseResult module_transform(const ModulePattern& pattern, double theta, HeightModel model);
PoseResult chain_pose(const ActuatorSpec& spec, std::span<const double> thetas,
                      HeightModel model);
/// Cumulative poses of every connection edge: element 0 is the base, element i
/// the top of module i.
std::vector<Pose> chain_edge_poses(const ActuatorSpec& spec, std::span<const double> thetas,
                                   HeightModel model);

enum class SweepQuantity { ThetaU, ThetaF, ThetaMax, ThetaTs };

/// Dense tabulation over (delta, b/a). Out-of-domain points are NaN.
struct SweepGrid {
  SweepQuantity quantity;
  std::vector<double> deltas;  ///< radians
  std::vector<double> ratios;
  std::vector<double> values;  ///< radians, row-major: deltas outer, ratios inner

  double at(std::size_t delta_index, std::size_t ratio_index) const {
    return values[delta_index * ratios.size() + ratio_index];
  }
};

SweepGrid parametric_sweep(SweepQuantity quantity, std::span<const double> deltas,
                           std::span<const double> ratios, double k = 0.0);

}  // namespace kresling
