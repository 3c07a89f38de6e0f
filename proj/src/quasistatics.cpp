#include "kresling/quasistatics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kresling/errors.hpp"
#include "kresling/units.hpp"

namespace kresling {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Difference step for every theta derivative, radians.
constexpr double kThetaStep = 5e-3;
constexpr int kScanIntervals = 1024;

double square(double x) { return x * x; }

double crease_energy_from(const ModulePattern& pattern, const CreaseConstants& crease,
                          const FoldAngles& now, const FoldAngles& rest) {
  const double thick = 2.0 * pattern.a() * square(now.qr - rest.qr) +
                       2.0 * pattern.b() * square(now.qm - rest.qm);
  const double thin = pattern.c() * square(now.rm - rest.rm);
  const double per_repeat = 0.5 * crease.k_c1 * thick + 0.5 * crease.k_c2 * thin;
  return pattern.n_sides() * per_repeat * units::kMicroJoulePerNewtonMillimetre;
}

ModulePattern uniform_pattern(const ActuatorSpec& spec) {
  if (!spec.uniform_geometry()) {
    throw ArgumentError("quasi-static model needs modules of identical geometry");
  }
  return spec.modules().front();
}

}  // namespace

double crease_energy(const ModulePattern& pattern, const CreaseConstants& crease,
                     double theta_u) {
  return crease_energy_from(pattern, crease, fold_angles(pattern, theta_u),
                            fold_angles(pattern, pattern.rest_rotation()));
}

double torsional_rigidity(double torque_nmm, double length_mm, double phi_prime_deg,
                          double phi0_deg) {
  const double twist = phi_prime_deg - phi0_deg;
  if (twist == 0.0) {
    throw DomainError("torsional rigidity undefined: phi' - phi0 = 0");
  }
  return torque_nmm * length_mm / twist;
}

double efficiency(double torque_nmm, double theta_rad, double pressure_kpa, double volume_mm3) {
  const double input = pressure_kpa * volume_mm3 * units::kMicroJoulePerKiloPascalCubicMillimetre;
  if (input == 0.0) throw DomainError("efficiency undefined: P*V_c = 0");
  const double output = torque_nmm * theta_rad * units::kMicroJoulePerNewtonMillimetre;
  return output / input;
}

ModuleMechanics::ModuleMechanics(const ModulePattern& pattern, const CreaseConstants& crease)
    : pattern_(pattern),
      crease_(crease),
      rest_(pattern.rest_rotation()),
      rest_folds_(fold_angles(pattern, rest_)) {
  scan();
}

ModuleMechanics::ModuleMechanics(const ActuatorSpec& spec)
    : ModuleMechanics(uniform_pattern(spec), spec.crease()) {}

double ModuleMechanics::crease_energy(double theta_u) const {
  return crease_energy_from(pattern_, crease_, fold_angles(pattern_, theta_u), rest_folds_);
}

double ModuleMechanics::volume(double theta_u) const { return chamber_volume(pattern_, theta_u); }

EnergyState ModuleMechanics::energy_state(double pressure_kpa, double theta_u) const {
  return {crease_energy(theta_u),
          pressure_kpa * volume(theta_u) * units::kMicroJoulePerKiloPascalCubicMillimetre,
          theta_u};
}

double ModuleMechanics::energy_rate(double theta_u) const {
  // Chain rule through the fold angles, so the rate is exactly zero at rest.
  const FoldAngles now = fold_angles(pattern_, theta_u);
  auto rate = [&](double FoldAngles::*q) {
    return numeric::richardson_derivative(
        [&](double t) { return fold_angles(pattern_, t).*q; }, theta_u, 0.0,
        pattern_.max_rotation(), kThetaStep);
  };
  const double thick = 2.0 * pattern_.a() * (now.qr - rest_folds_.qr) * rate(&FoldAngles::qr) +
                       2.0 * pattern_.b() * (now.qm - rest_folds_.qm) * rate(&FoldAngles::qm);
  const double thin = pattern_.c() * (now.rm - rest_folds_.rm) * rate(&FoldAngles::rm);
  return pattern_.n_sides() * (crease_.k_c1 * thick + crease_.k_c2 * thin) *
         units::kMicroJoulePerNewtonMillimetre;
}

double ModuleMechanics::volume_rate(double theta_u) const {
  return numeric::richardson_derivative([this](double t) { return volume(t); }, theta_u, 0.0,
                                        pattern_.max_rotation(), kThetaStep);
}

numeric::DerivativeCheck ModuleMechanics::energy_rate_check(double theta_u,
                                                            double rel_tol) const {
  return numeric::verified_derivative([this](double t) { return crease_energy(t); }, theta_u,
                                      0.0, pattern_.max_rotation(), kThetaStep, rel_tol,
                                      rel_tol * energy_rate_scale());
}

numeric::DerivativeCheck ModuleMechanics::volume_rate_check(double theta_u,
                                                            double rel_tol) const {
  const double volume_scale = pattern_.a() * pattern_.a() * pattern_.b();
  return numeric::verified_derivative([this](double t) { return volume(t); }, theta_u, 0.0,
                                      pattern_.max_rotation(), kThetaStep, rel_tol,
                                      rel_tol * volume_scale);
}

double ModuleMechanics::energy_rate_scale() const noexcept {
  const double per_repeat = crease_.k_c1 * (2.0 * pattern_.a() + 2.0 * pattern_.b()) +
                            crease_.k_c2 * pattern_.c();
  return pattern_.n_sides() * per_repeat * units::kMicroJoulePerNewtonMillimetre;
}

double ModuleMechanics::equilibrium_pressure(double theta_u) const {
  const double theta_max = pattern_.max_rotation();
  if (!(theta_u > 0.0 && theta_u < theta_max)) {
    throw DomainError(fmt::format("theta_u must lie in (0, {}) deg (got {} deg)",
                                  units::deg(theta_max), units::deg(theta_u)));
  }
  const double dv = volume_rate(theta_u) * units::kMicroJoulePerKiloPascalCubicMillimetre;
  const double volume_scale = pattern_.a() * pattern_.a() * pattern_.b();
  if (std::abs(dv) < 1e-9 * volume_scale) {
    throw SingularConfigurationError(
        fmt::format("dV_C/dtheta vanishes at theta_u = {} deg", units::deg(theta_u)));
  }
  return energy_rate(theta_u) / dv;
}

double ModuleMechanics::potential_rate(double pressure_kpa, double theta_u) const {
  return energy_rate(theta_u) -
         pressure_kpa * volume_rate(theta_u) * units::kMicroJoulePerKiloPascalCubicMillimetre;
}

double ModuleMechanics::output_torque(double pressure_kpa, double theta_u) const {
  return potential_rate(pressure_kpa, theta_u) * units::kNewtonMillimetrePerMicroJoule;
}

double ModuleMechanics::balance_residual(double pressure_kpa, double theta_u) const {
  const double dw = energy_rate(theta_u);
  const double work =
      pressure_kpa * volume_rate(theta_u) * units::kMicroJoulePerKiloPascalCubicMillimetre;
  return std::abs(dw - work) / (std::abs(dw) + std::abs(work) + energy_rate_scale());
}

void ModuleMechanics::scan() {
  const double theta_max = pattern_.max_rotation();
  scan_theta_.clear();
  for (int i = 1; i < kScanIntervals; ++i) scan_theta_.push_back(theta_max * i / kScanIntervals);
  scan_theta_.push_back(rest_);
  std::sort(scan_theta_.begin(), scan_theta_.end());
  scan_theta_.erase(std::unique(scan_theta_.begin(), scan_theta_.end()), scan_theta_.end());

  const std::size_t count = scan_theta_.size();
  scan_energy_rate_.assign(count, kNaN);
  scan_volume_rate_.assign(count, kNaN);
  scan_pressure_.assign(count, kNaN);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      scan_energy_rate_[i] = energy_rate(scan_theta_[i]);
      scan_volume_rate_[i] = volume_rate(scan_theta_[i]);
      scan_pressure_[i] = equilibrium_pressure(scan_theta_[i]);
    } catch (const Error&) {
      // singular point: breaks any branch through it
    }
  }

  const auto rest_it = std::find(scan_theta_.begin(), scan_theta_.end(), rest_);
  std::size_t lo = static_cast<std::size_t>(rest_it - scan_theta_.begin());
  std::size_t hi = lo;
  if (std::isnan(scan_pressure_[lo])) {
    branch_ = {rest_, rest_, kNaN, kNaN};
    return;
  }
  while (lo > 0 && scan_pressure_[lo - 1] > scan_pressure_[lo]) --lo;
  while (hi + 1 < count && scan_pressure_[hi + 1] < scan_pressure_[hi]) ++hi;
  branch_ = {scan_theta_[lo], scan_theta_[hi], scan_pressure_[lo], scan_pressure_[hi]};
}

double ModuleMechanics::root_in(double pressure_kpa, double lo, double hi) const {
  return numeric::bisect([&](double t) { return potential_rate(pressure_kpa, t); }, lo, hi);
}

double ModuleMechanics::equilibrium_rotation(double pressure_kpa) const {
  if (pressure_kpa == 0.0) {
    // W_s is minimal at the rest angle; return it without root-finding noise.
    return rest_;
  }
  if (!(pressure_kpa <= branch_.pressure_at_lo && pressure_kpa >= branch_.pressure_at_hi)) {
    throw NoEquilibriumError(fmt::format(
        "no equilibrium for p = {} kPa on the default branch: scanned theta_u in [{:.4f}, {:.4f}] "
        "deg covering p in [{:.6g}, {:.6g}] kPa",
        pressure_kpa, units::deg(branch_.theta_lo), units::deg(branch_.theta_hi),
        branch_.pressure_at_hi, branch_.pressure_at_lo));
  }
  const auto first = std::lower_bound(scan_theta_.begin(), scan_theta_.end(), branch_.theta_lo);
  auto i = static_cast<std::size_t>(first - scan_theta_.begin());
  while (scan_theta_[i + 1] <= branch_.theta_hi && scan_pressure_[i + 1] > pressure_kpa) ++i;
  if (scan_pressure_[i] == pressure_kpa) return scan_theta_[i];
  // One extra grid interval either side absorbs roundoff when the root sits on
  // a grid node; p stays monotone on the widened bracket.
  const std::size_t lo = scan_theta_[i] > branch_.theta_lo ? i - 1 : i;
  const std::size_t hi = scan_theta_[i + 1] < branch_.theta_hi ? i + 2 : i + 1;
  return root_in(pressure_kpa, scan_theta_[lo], scan_theta_[hi]);
}

std::vector<double> ModuleMechanics::equilibria(double pressure_kpa) const {
  std::vector<double> roots;
  const double dv_scale = units::kMicroJoulePerKiloPascalCubicMillimetre;
  auto rate_at = [&](std::size_t i) {
    return scan_energy_rate_[i] - pressure_kpa * scan_volume_rate_[i] * dv_scale;
  };
  for (std::size_t i = 0; i + 1 < scan_theta_.size(); ++i) {
    const double g0 = rate_at(i);
    const double g1 = rate_at(i + 1);
    if (std::isnan(g0) || std::isnan(g1)) continue;
    if (g0 == 0.0) {
      roots.push_back(scan_theta_[i]);
      continue;
    }
    if ((g0 < 0.0) == (g1 < 0.0)) continue;
    const double root = root_in(pressure_kpa, scan_theta_[i], scan_theta_[i + 1]);
    // A jump in the rate across a fold-angle kink is not an equilibrium.
    if (balance_residual(pressure_kpa, root) < 1e-6) roots.push_back(root);
  }
  return roots;
}

std::vector<CurveSample> pressure_angle_curve(const ActuatorSpec& spec,
                                              std::span<const double> pressures_kpa) {
  const ModuleMechanics model(spec);
  std::vector<CurveSample> curve;
  curve.reserve(pressures_kpa.size());
  for (double p : pressures_kpa) {
    CurveSample sample{p, kNaN, kNaN, kNaN, model.equilibria(p).size(), false};
    try {
      const double theta = model.equilibrium_rotation(p);
      sample.theta_u = theta;
      sample.volume_mm3 = model.volume(theta);
      sample.torque_nmm = model.output_torque(p, theta);
      sample.solved = true;
    } catch (const NoEquilibriumError&) {
      // emitted as missing
    }
    curve.push_back(sample);
  }
  return curve;
}

std::vector<TorqueSample> torque_vs_operating_length(const ActuatorSpec& spec, double pressure_kpa,
                                                     std::span<const double> lengths_mm) {
  const ModuleMechanics model(spec);
  const double count = static_cast<double>(spec.size());
  const double full_length = count * model.pattern().b();
  const double rest = model.rest_rotation();

  double handed_sum = 0.0;
  for (const auto& m : spec.modules()) handed_sum += signed_rotation(m.handedness(), 1.0);

  std::vector<TorqueSample> samples;
  samples.reserve(lengths_mm.size());
  for (double l : lengths_mm) {
    if (!(l > 0.0 && l <= full_length)) {
      throw DomainError(fmt::format(
          "operating length must satisfy 0 < l <= n*b = {} mm (got l = {} mm)", full_length, l));
    }
    const double theta = rotation_from_height(model.pattern(), l / count);
    const double torque = model.output_torque(pressure_kpa, theta);
    const double twist_deg = units::deg(handed_sum * (theta - rest));
    const double rigidity =
        twist_deg == 0.0 ? kNaN : torsional_rigidity(torque, l, twist_deg, 0.0);
    samples.push_back({l, theta, torque, rigidity});
  }
  return samples;
}

}  // namespace kresling
