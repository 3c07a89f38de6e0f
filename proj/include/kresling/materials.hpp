#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace kresling {

/// Yeoh constants, MPa. Stress is nominal (first Piola-Kirchhoff) under
/// exact incompressibility.
struct YeohCoefficients {
  double c10;
  double c20;
  double c30;

  bool operator==(const YeohCoefficients&) const = default;
};

namespace materials {

YeohCoefficients ecoflex_0030();
YeohCoefficients e615();
/// Dragonskin 30 / Ecoflex 00-30, 1:1 by mass.
YeohCoefficients dragonskin_ecoflex_mixture();

}  // namespace materials

struct StressSample {
  double stretch;     ///< lambda, dimensionless
  double stress_mpa;  ///< nominal stress
};

/// Uniaxial tensile samples with strictly increasing, positive stretch.
class StressStrainCurve {
 public:
  /// Throws InputError for non-monotone or nonpositive stretch.
  explicit StressStrainCurve(std::vector<StressSample> samples);

  const std::vector<StressSample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<StressSample> samples_;
};

double first_invariant(double l1, double l2, double l3);
double yeoh_energy_density(const YeohCoefficients& coeffs, double i1);
/// Energy density along the incompressible uniaxial path.
double uniaxial_energy(const YeohCoefficients& coeffs, double lambda);
double uniaxial_nominal_stress(const YeohCoefficients& coeffs, double lambda);

struct FitReport {
  YeohCoefficients coeffs;
  int terms;                      ///< 2 or 3; C30 is 0 for a two-term fit
  double residual_norm;           ///< 2-norm of (model - sample), MPa
  std::vector<double> residuals;  ///< per sample, MPa
};

/// Linear least squares of nominal stress against (C10, C20[, C30]).
/// Needs at least 4 samples covering lambda in [1, 1.5].
FitReport fit_yeoh(const StressStrainCurve& curve, int terms = 3);

/// Two-column text with header `lambda,stress_mpa`.
StressStrainCurve read_stress_strain(std::istream& in);
StressStrainCurve read_stress_strain(const std::filesystem::path& path);

}  // namespace kresling
