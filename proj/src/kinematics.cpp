#include "kresling/kinematics.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kresling/errors.hpp"
#include "kresling/units.hpp"

namespace kresling {

namespace {

void check_ratio(double b_over_a) {
  if (!(b_over_a > 0.0 && b_over_a <= 2.0)) {
    throw DomainError(fmt::format("b/a must satisfy 0 < b/a <= 2 (got b/a = {})", b_over_a));
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5 * units::kPi)) {
    throw DomainError(fmt::format("delta must satisfy 0 < delta <= 90 deg (got delta = {} deg)",
                                  units::deg(delta)));
  }
}

double checked_asin(double argument, const char* what) {
  if (!(argument >= -1.0 && argument <= 1.0)) {
    throw DomainError(
        fmt::format("arcsin argument of {} must lie in [-1, 1] (got {})", what, argument));
  }
  return std::asin(argument);
}

const char* type_name(ActuatorType type) {
  switch (type) {
    case ActuatorType::TypeI: return "TypeI";
    case ActuatorType::TypeII: return "TypeII";
    case ActuatorType::TypeIII: return "TypeIII";
    case ActuatorType::Custom: return "Custom";
  }
  return "?";
}

Handedness opposite(Handedness h) {
  return h == Handedness::CW ? Handedness::CCW : Handedness::CW;
}

// Handedness of module i in a stack of `count` for the given type, relative
// to the first module.
Handedness expected_handedness(ActuatorType type, Handedness first, std::size_t i,
                               std::size_t count) {
  switch (type) {
    case ActuatorType::TypeII: return i < count / 2 ? first : opposite(first);
    case ActuatorType::TypeIII: return i % 2 == 0 ? first : opposite(first);
    default: return first;
  }
}

}  // namespace

double unfold_rotation(double delta, double b_over_a) {
  check_delta(delta);
  check_ratio(b_over_a);
  return 2.0 * checked_asin(0.5 * b_over_a * std::cos(delta), "unfold rotation");
}

double folding_rotation(double delta, double b_over_a) {
  return max_rotation(b_over_a) - unfold_rotation(delta, b_over_a);
}

double max_rotation(double b_over_a) {
  check_ratio(b_over_a);
  return 2.0 * checked_asin(0.5 * b_over_a, "max rotation");
}

double skeleton_max_rotation(double b_over_a, double k, double delta0) {
  check_ratio(b_over_a);
  check_delta(delta0);
  if (!(k >= 0.0)) {
    throw DomainError(fmt::format("skeleton ratio k must be >= 0 (got k = {})", k));
  }
  return 2.0 * checked_asin(0.5 * b_over_a * (1.0 - k / std::sin(delta0)),
                            "skeleton max rotation");
}

ActuatorSpec::ActuatorSpec(std::vector<ModulePattern> modules, ActuatorType type,
                           CreaseConstants crease, double skeleton_ratio)
    : modules_(std::move(modules)), type_(type), crease_(crease), skeleton_ratio_(skeleton_ratio) {
  if (modules_.empty()) throw ArgumentError("an actuator needs at least one module");
  if (!(crease_.k_c1 >= 0.0 && crease_.k_c2 >= 0.0)) {
    throw ArgumentError(fmt::format("crease constants must be >= 0 (got k_c1 = {}, k_c2 = {})",
                                    crease_.k_c1, crease_.k_c2));
  }
  if (!(skeleton_ratio_ >= 0.0)) {
    throw ArgumentError(
        fmt::format("skeleton ratio k must be >= 0 (got k = {})", skeleton_ratio_));
  }
  for (const auto& m : modules_) {
    const double argument = 0.5 * m.b_over_a() * (1.0 - skeleton_ratio_ / std::sin(m.delta0()));
    if (argument > 1.0 || argument < -1.0) {
      throw ArgumentError(fmt::format(
          "skeleton ratio k = {} puts (b/2a)*(1 - k/sin(delta0)) = {} outside [-1, 1]",
          skeleton_ratio_, argument));
    }
  }

  const std::size_t count = modules_.size();
  if ((type_ == ActuatorType::TypeII || type_ == ActuatorType::TypeIII) && count % 2 != 0) {
    throw ArgumentError(fmt::format("{} needs an even module count (got {})", type_name(type_),
                                    count));
  }
  const Handedness first = modules_.front().handedness();
  for (std::size_t i = 0; i < count; ++i) {
    if (type_ != ActuatorType::Custom &&
        modules_[i].handedness() != expected_handedness(type_, first, i, count)) {
      throw ArgumentError(fmt::format("module {} handedness does not follow the {} pattern", i,
                                      type_name(type_)));
    }
  }
}

ActuatorSpec ActuatorSpec::make(ActuatorType type, const ModulePattern& pattern, int count,
                                CreaseConstants crease, double skeleton_ratio) {
  if (count < 1) throw ArgumentError(fmt::format("module count must be >= 1 (got {})", count));
  std::vector<ModulePattern> modules;
  modules.reserve(count);
  const auto n = static_cast<std::size_t>(count);
  for (std::size_t i = 0; i < n; ++i) {
    modules.push_back(
        pattern.with_handedness(expected_handedness(type, pattern.handedness(), i, n)));
  }
  return ActuatorSpec(std::move(modules), type, crease, skeleton_ratio);
}

bool ActuatorSpec::uniform_geometry() const noexcept {
  const auto& f = modules_.front();
  for (const auto& m : modules_) {
    if (m.with_handedness(f.handedness()) != f) return false;
  }
  return true;
}

Eigen::Matrix3d rotation_y(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix3d r;
  r << c, 0.0, s,
       0.0, 1.0, 0.0,
       -s, 0.0, c;
  return r;
}

Pose::Pose(double angle, const Eigen::Vector3d& translation) : angle_(angle) {
  matrix_.topLeftCorner<3, 3>() = rotation_y(angle);
  matrix_.topRightCorner<3, 1>() = translation;
}

Pose Pose::operator*(const Pose& rhs) const {
  Pose out;
  out.matrix_ = matrix_ * rhs.matrix_;
  out.angle_ = angle_ + rhs.angle_;
  return out;
}

Pose Pose::inverse() const {
  Pose out;
  const Eigen::Matrix3d rt = rotation().transpose();
  out.matrix_.topLeftCorner<3, 3>() = rt;
  out.matrix_.topRightCorner<3, 1>() = -rt * translation();
  out.angle_ = -angle_;
  return out;
}

double signed_rotation(Handedness handedness, double magnitude) {
  return handedness == Handedness::CW ? magnitude : -magnitude;
}

PoseResult module_transform(const ModulePattern& pattern, double theta, HeightModel model) {
  const double magnitude = std::abs(theta);
  const double theta_max = pattern.max_rotation();
  if (magnitude > theta_max + 1e-12) {
    throw DomainError(fmt::format("|theta| must be <= theta_max = {} deg (got {} deg)",
                                  units::deg(theta_max), units::deg(theta)));
  }

  PoseResult result;
  double height = 0.0;
  if (model == HeightModel::Exact) {
    height = height_from_rotation(pattern, magnitude);
  } else {
    const double sixty = units::rad(60.0);
    height = pattern.b() - pattern.b() / sixty * magnitude;
    if (std::abs(theta_max - sixty) > 1e-9) {
      result.warnings.push_back(fmt::format(
          "linear height assumes theta_max = 60 deg but this module has theta_max = "
          "{:.2f} deg",
          units::deg(theta_max)));
    }
  }
  result.pose = Pose(theta, Eigen::Vector3d(0.0, height, 0.0));
  return result;
}

std::vector<Pose> chain_edge_poses(const ActuatorSpec& spec, std::span<const double> thetas,
                                   HeightModel model) {
  if (thetas.size() != spec.size()) {
    throw ArgumentError(fmt::format("expected {} module angles, got {}", spec.size(),
                                    thetas.size()));
  }
  std::vector<Pose> edges;
  edges.reserve(spec.size() + 1);
  edges.push_back(Pose::identity());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    edges.push_back(edges.back() * module_transform(spec.modules()[i], thetas[i], model).pose);
  }
  return edges;
}

PoseResult chain_pose(const ActuatorSpec& spec, std::span<const double> thetas,
                      HeightModel model) {
  if (thetas.size() != spec.size()) {
    throw ArgumentError(fmt::format("expected {} module angles, got {}", spec.size(),
                                    thetas.size()));
  }
  PoseResult result;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto step = module_transform(spec.modules()[i], thetas[i], model);
    result.pose = result.pose * step.pose;
    for (auto& w : step.warnings) {
      result.warnings.push_back(fmt::format("module {}: {}", i, w));
    }
  }
  return result;
}

SweepGrid parametric_sweep(SweepQuantity quantity, std::span<const double> deltas,
                           std::span<const double> ratios, double k) {
  if (deltas.empty() || ratios.empty()) throw ArgumentError("sweep grids must be nonempty");
  SweepGrid grid{quantity, {deltas.begin(), deltas.end()}, {ratios.begin(), ratios.end()}, {}};
  grid.values.reserve(deltas.size() * ratios.size());
  for (double delta : deltas) {
    for (double ratio : ratios) {
      double value = std::numeric_limits<double>::quiet_NaN();
      try {
        switch (quantity) {
          case SweepQuantity::ThetaU: value = unfold_rotation(delta, ratio); break;
          case SweepQuantity::ThetaF: value = folding_rotation(delta, ratio); break;
          case SweepQuantity::ThetaMax:
            check_delta(delta);
            value = max_rotation(ratio);
            break;
          case SweepQuantity::ThetaTs: value = skeleton_max_rotation(ratio, k, delta); break;
        }
      } catch (const DomainError&) {
        // missing point
      }
      grid.values.push_back(value);
    }
  }
  return grid;
}

}  // namespace kresling
