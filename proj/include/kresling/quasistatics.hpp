#pragma once

#include <span>
#include <vector>

#include "kresling/geometry.hpp"
#include "kresling/kinematics.hpp"
#include "kresling/numeric.hpp"

namespace kresling {

/// Energies of one module, uJ (1 kPa*mm^3 = 1 uJ).
///
/// Sign convention: `pressure_work` is p*V_C, the work done by the chamber
/// gas; the total potential of the loaded module is W_s - p*V_C. With this
/// choice p = 0 sits at the rest angle and vacuum folds the module towards
/// larger theta_u.
struct EnergyState {
  double crease_energy;
  double pressure_work;
  double theta_u;

  double potential() const noexcept { return crease_energy - pressure_work; }
};

/// Stored crease energy, uJ, relative to the stress-free molded shape at
/// theta_u0 = unfold_rotation(delta0, b/a). Crease lengths are taken from the
/// pattern (2a for the polygon edges, 2b for the hypotenuse creases, c for the
/// diagonals) and summed over the n_sides repeats.
double crease_energy(const ModulePattern& pattern, const CreaseConstants& crease, double theta_u);

double torsional_rigidity(double torque_nmm, double length_mm, double phi_prime_deg,
                          double phi0_deg);
/// T*theta / (P*V_c); torque N*mm, angle rad, pressure kPa, volume mm^3.
double efficiency(double torque_nmm, double theta_rad, double pressure_kpa, double volume_mm3);

/// Maximal interval around the rest angle on which the equilibrium pressure
/// decreases monotonically with theta_u, resolved on the scan grid.
struct EquilibriumBranch {
  double theta_lo;
  double theta_hi;
  double pressure_at_lo;  ///< largest pressure on the branch
  double pressure_at_hi;  ///< smallest (most negative) pressure on the branch
};

/// Quasi-static mechanics of one module. Identical modules stacked under one
/// pressure share the same equilibrium theta_u, so a uniform ActuatorSpec is
/// represented by its first module.
class ModuleMechanics {
 public:
  ModuleMechanics(const ModulePattern& pattern, const CreaseConstants& crease);
  /// Throws ArgumentError when the modules differ in geometry.
  explicit ModuleMechanics(const ActuatorSpec& spec);

  const ModulePattern& pattern() const noexcept { return pattern_; }
  const CreaseConstants& crease() const noexcept { return crease_; }
  double rest_rotation() const noexcept { return rest_; }

  double crease_energy(double theta_u) const;
  double volume(double theta_u) const;
  EnergyState energy_state(double pressure_kpa, double theta_u) const;

  /// dW_s/dtheta in uJ/rad and dV_C/dtheta in mm^3/rad.
  double energy_rate(double theta_u) const;
  double volume_rate(double theta_u) const;
  /// Step-halving estimates; the energy check differentiates W_s itself rather
  /// than going through the fold-angle rates.
  numeric::DerivativeCheck energy_rate_check(double theta_u, double rel_tol) const;
  numeric::DerivativeCheck volume_rate_check(double theta_u, double rel_tol) const;

  /// Pressure (kPa) holding the unloaded module at theta_u.
  double equilibrium_pressure(double theta_u) const;
  /// Equilibrium on the default branch (the one containing the rest angle).
  double equilibrium_rotation(double pressure_kpa) const;
  /// Every equilibrium over (0, theta_max), ascending.
  std::vector<double> equilibria(double pressure_kpa) const;
  const EquilibriumBranch& default_branch() const noexcept { return branch_; }

  /// External torque, N*mm: derivative of W_s - p*V_C with respect to theta_u.
  double output_torque(double pressure_kpa, double theta_u) const;
  /// |dW_s/dtheta - p dV_C/dtheta| normalised by the magnitudes involved.
  double balance_residual(double pressure_kpa, double theta_u) const;
  /// Characteristic crease energy rate, uJ/rad (one radian of fold deviation
  /// on every crease).
  double energy_rate_scale() const noexcept;

 private:
  double potential_rate(double pressure_kpa, double theta_u) const;
  double root_in(double pressure_kpa, double lo, double hi) const;
  void scan();

  ModulePattern pattern_;
  CreaseConstants crease_;
  double rest_;
  FoldAngles rest_folds_;
  std::vector<double> scan_theta_;
  std::vector<double> scan_energy_rate_;
  std::vector<double> scan_volume_rate_;
  std::vector<double> scan_pressure_;
  EquilibriumBranch branch_{};
};

struct CurveSample {
  double pressure_kpa;
  double theta_u;        ///< NaN when unsolved
  double volume_mm3;     ///< NaN when unsolved
  double torque_nmm;     ///< residual torque at the solution, ideally 0
  std::size_t root_count;  ///< equilibria over the full range at this pressure
  bool solved;
};

std::vector<CurveSample> pressure_angle_curve(const ActuatorSpec& spec,
                                              std::span<const double> pressures_kpa);

struct TorqueSample {
  double length_mm;
  double theta_u;
  double torque_nmm;
  double rigidity;  ///< N*mm^2/deg, NaN at the rest pose
};

/// Operating length l = n*h(theta_u) of a stack of n modules under pressure p.
std::vector<TorqueSample> torque_vs_operating_length(const ActuatorSpec& spec, double pressure_kpa,
                                                     std::span<const double> lengths_mm);

}  // namespace kresling
