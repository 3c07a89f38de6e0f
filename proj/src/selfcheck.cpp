#include "kresling/selfcheck.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Geometry>

#include <fmt/format.h>

#include "kresling/errors.hpp"
#include "kresling/geometry.hpp"
#include "kresling/kinematics.hpp"
#include "kresling/materials.hpp"
#include "kresling/quasistatics.hpp"
#include "kresling/units.hpp"

namespace kresling {

namespace {

const ModulePattern kIA(18.0, 18.0, 27.6, 45.0);
const ModulePattern kIB(20.0, 40.0, 44.7, 53.0);

struct Tracker {
  double worst = 0.0;
  void see(double x) { worst = std::max(worst, std::isnan(x) ? INFINITY : x); }
};

double relative(double x, double ref) { return std::abs(x - ref) / std::max(1e-300, std::abs(ref)); }

// Divergence theorem about the origin, taking each face's first corner as its
// representative point instead of its centroid.
double divergence_volume(const ModuleVertices& v) {
  double volume = 0.0;
  for (const auto& face : chamber_faces(v)) {
    Point3 area = Point3::Zero();
    const std::size_t m = face.corners.size();
    for (std::size_t i = 1; i + 1 < m; ++i) {
      area += 0.5 * (face.corners[i] - face.corners[0]).cross(face.corners[i + 1] - face.corners[0]);
    }
    volume += face.corners[0].dot(area) / 3.0;
  }
  return volume;
}

CheckResult closed_form_limits() {
  const double e1 = std::abs(units::deg(max_rotation(2.0)) - 180.0);
  const double e2 = std::abs(units::deg(max_rotation(1.0)) - 60.0);
  return {"closed-form maximum rotation", e1 < 1e-12 && e2 < 1e-12,
          fmt::format("|theta_max(2) - 180| = {:.1e} deg, |theta_max(1) - 60| = {:.1e} deg", e1, e2)};
}

CheckResult vertex_construction() {
  Tracker t;
  for (const auto& p : {kIA, kIB}) {
    const double rest = p.rest_rotation();
    const auto v = module_vertices(p, rest);
    t.see(relative((v.top[0] - v.bottom[0]).norm(), p.b()));
    t.see(relative(v.top[0].y(), p.b() * std::sin(p.delta0())));
    // Hypotenuse seen from the bottom polygon plane makes angle delta0.
    const Point3 d = v.top[0] - v.bottom[0];
    t.see(std::abs(std::asin(d.y() / d.norm()) - p.delta0()));
  }
  return {"rest state from vertex construction", t.worst < 1e-12,
          fmt::format("worst deviation {:.1e}", t.worst)};
}

CheckResult volume_routes() {
  Tracker t;
  for (const auto& p : {kIA, kIB}) {
    for (int i = 1; i < 20; ++i) {
      const double theta = p.max_rotation() * i / 20.0;
      const auto v = module_vertices(p, theta);
      const double pyramid = chamber_volume(v);
      t.see(relative(pyramid, divergence_volume(v)));
      t.see(relative(pyramid, hexagon_volume_closed_form(p, theta)));
    }
  }
  return {"chamber volume: pyramid vs divergence vs closed form", t.worst < 1e-9,
          fmt::format("worst relative gap {:.1e}", t.worst)};
}

CheckResult energy_minimum() {
  const ModuleMechanics m(kIB, {});
  const double rest = m.rest_rotation();
  bool ok = m.crease_energy(rest) == 0.0;
  for (int d = -15; d <= 15; ++d) {
    if (d != 0) ok = ok && m.crease_energy(rest + units::rad(d)) > 0.0;
  }
  const double slope = std::abs(m.energy_rate(rest)) / m.energy_rate_scale();
  ok = ok && slope < 1e-8;
  return {"crease energy minimum at rest", ok,
          fmt::format("W_s(rest) = {}, |dW/dtheta|/scale = {:.1e}", m.crease_energy(rest), slope)};
}

CheckResult equilibrium_identities() {
  const ModuleMechanics m(kIB, {});
  Tracker torque, inverse;
  torque.see(std::abs(m.equilibrium_rotation(0.0) - m.rest_rotation()));
  const auto& branch = m.default_branch();
  for (int i = 1; i < 20; ++i) {
    const double theta = branch.theta_lo + (branch.theta_hi - branch.theta_lo) * i / 20.0;
    const double p = m.equilibrium_pressure(theta);
    const double back = m.equilibrium_rotation(p);
    inverse.see(std::abs(back - theta));
    torque.see(std::abs(m.output_torque(p, back)));
  }
  const bool ok = torque.worst < 1e-9 && inverse.worst < 1e-6;
  return {"equilibrium: zero torque and inverse consistency", ok,
          fmt::format("max |tau| = {:.1e} N*mm, max |theta error| = {:.1e} rad", torque.worst,
                      inverse.worst)};
}

CheckResult yeoh_gradient() {
  Tracker t;
  for (const auto& c : {materials::ecoflex_0030(), materials::e615(),
                        materials::dragonskin_ecoflex_mixture()}) {
    for (int i = 0; i <= 20; ++i) {
      const double lambda = 1.01 + 0.99 * i / 20.0;
      const double h = 1e-5;
      const double fd =
          (uniaxial_energy(c, lambda + h) - uniaxial_energy(c, lambda - h)) / (2.0 * h);
      t.see(relative(uniaxial_nominal_stress(c, lambda), fd));
    }
  }
  return {"Yeoh stress equals energy gradient", t.worst < 1e-6,
          fmt::format("worst relative gap {:.1e}", t.worst)};
}

CheckResult opposed_chain() {
  const auto spec = ActuatorSpec::make(ActuatorType::TypeII, kIA, 8);
  std::vector<double> thetas;
  for (const auto& m : spec.modules()) thetas.push_back(signed_rotation(m.handedness(), 0.5));
  const double net = chain_pose(spec, thetas, HeightModel::Exact).pose.rotation_angle();
  return {"opposed-handedness chain cancels rotation", std::abs(net) < 1e-12,
          fmt::format("net rotation {:.1e} rad", net)};
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  const std::vector<std::function<CheckResult()>> checks = {
      closed_form_limits, vertex_construction, volume_routes, energy_minimum,
      equilibrium_identities, yeoh_gradient, opposed_chain};
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    try {
      results.push_back(check());
    } catch (const Error& e) {
      results.push_back({"(aborted check)", false, fmt::format("{}: {}", e.kind(), e.what())});
    }
  }
  return results;
}

}  // namespace kresling
