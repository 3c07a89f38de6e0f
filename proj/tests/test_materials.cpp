#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "kresling/errors.hpp"
#include "kresling/materials.hpp"

using namespace kresling;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// Nominal uniaxial stress written out term by term.
double stress_oracle(const YeohCoefficients& c, double l) {
  const double x = l * l + 2.0 / l - 3.0;
  const double dw = c.c10 + 2.0 * c.c20 * x + 3.0 * c.c30 * x * x;
  return 2.0 * (l - 1.0 / (l * l)) * dw;
}

StressStrainCurve synthetic(const YeohCoefficients& c, int points, double noise,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  std::vector<StressSample> s;
  for (int i = 0; i < points; ++i) {
    const double l = 1.0 + 1.0 * i / (points - 1);
    s.push_back({l, stress_oracle(c, l) * (1.0 + (i == 0 ? 0.0 : gauss(rng)))});
  }
  return StressStrainCurve(s);
}

const YeohCoefficients kSets[] = {materials::ecoflex_0030(), materials::e615(),
                                  materials::dragonskin_ecoflex_mixture()};

}  // namespace

TEST(Invariant, FirstInvariant) {
  EXPECT_EQ(first_invariant(1, 1, 1), 3.0);
  EXPECT_DOUBLE_EQ(first_invariant(2, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)), 5.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    EXPECT_NEAR(first_invariant(a, b, c), a * a + b * b + c * c, 1e-15);
  }
  EXPECT_THROW(first_invariant(0, 1, 1), DomainError);
}

TEST(Energy, ZeroPointAndKnownValues) {
  for (const auto& c : kSets) {
    EXPECT_EQ(yeoh_energy_density(c, 3.0), 0.0);
    EXPECT_EQ(uniaxial_nominal_stress(c, 1.0), 0.0);
  }
  const auto e = materials::e615();
  EXPECT_NEAR(yeoh_energy_density(e, 4.0), 0.0779, 5e-5);
  EXPECT_NEAR(yeoh_energy_density(e, 4.0), 0.0727207 + 0.00527073 - 7.73102e-5, 1e-15);
  const auto f = materials::ecoflex_0030();
  const double x = 0.5;
  EXPECT_NEAR(yeoh_energy_density(f, 3.5), f.c10 * x + f.c20 * x * x + f.c30 * x * x * x, 1e-15);
  EXPECT_THROW(yeoh_energy_density(e, 2.5), DomainError);
}

TEST(Energy, StressIsEnergyGradient) {
  for (const auto& c : kSets) {
    for (int i = 0; i <= 99; ++i) {
      const double l = 1.01 + 0.99 * i / 99.0;
      const double h = 1e-6;
      const double fd = (uniaxial_energy(c, l + h) - uniaxial_energy(c, l - h)) / (2 * h);
      EXPECT_LT(rel(uniaxial_nominal_stress(c, l), fd), 1e-6) << "lambda = " << l;
    }
    EXPECT_LT(rel(uniaxial_nominal_stress(c, 1.5), stress_oracle(c, 1.5)), 1e-14);
  }
}

TEST(Energy, MixtureIsNearlyLinear) {
  const auto c = materials::dragonskin_ecoflex_mixture();
  std::vector<double> x, y;
  for (int i = 0; i <= 100; ++i) {
    x.push_back(1.0 + i / 100.0);
    y.push_back(uniaxial_nominal_stress(c, x.back()));
  }
  const double n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  EXPECT_GT(sxy * sxy / (sxx * syy), 0.98);
}

TEST(Fit, NoiseFreeRoundTrip) {
  for (const auto& c : kSets) {
    const auto report = fit_yeoh(synthetic(c, 50, 0.0, 1));
    EXPECT_LT(rel(report.coeffs.c10, c.c10), 1e-8);
    EXPECT_LT(rel(report.coeffs.c20, c.c20), 1e-8);
    EXPECT_LT(rel(report.coeffs.c30, c.c30), 1e-8);
    EXPECT_EQ(report.residuals.size(), 50u);
    EXPECT_LT(report.residual_norm, 1e-10);
  }
}

TEST(Fit, NoisyRecoveryOfLeadingTerm) {
  const auto c = materials::e615();
  const auto report = fit_yeoh(synthetic(c, 50, 0.01, 77));
  EXPECT_LT(rel(report.coeffs.c10, c.c10), 0.05);
}

TEST(Fit, ThirdTermNeverHurts) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto curve = synthetic(materials::dragonskin_ecoflex_mixture(), 40, 0.02, seed);
    EXPECT_LE(fit_yeoh(curve, 3).residual_norm, fit_yeoh(curve, 2).residual_norm + 1e-15);
  }
  const auto two = fit_yeoh(synthetic(materials::e615(), 40, 0.0, 1), 2);
  EXPECT_EQ(two.coeffs.c30, 0.0);
  EXPECT_EQ(two.terms, 2);
}

TEST(Fit, RejectsBadCurves) {
  EXPECT_THROW(fit_yeoh(StressStrainCurve({{1.0, 0.0}, {1.2, 0.1}, {1.6, 0.2}})), FitError);
  EXPECT_THROW(fit_yeoh(StressStrainCurve({{1.0, 0.2}, {1.2, 0.2}, {1.4, 0.2}, {1.6, 0.2}})),
               FitError);
  EXPECT_THROW(fit_yeoh(StressStrainCurve({{1.0, 0.0}, {1.1, 0.1}, {1.2, 0.2}, {1.3, 0.3}})),
               FitError);
  EXPECT_THROW(fit_yeoh(synthetic(materials::e615(), 10, 0.0, 1), 4), ArgumentError);
  EXPECT_THROW(StressStrainCurve({{1.0, 0.0}, {1.0, 0.1}}), InputError);
  EXPECT_THROW(StressStrainCurve({{-1.0, 0.0}}), InputError);
  EXPECT_THROW(StressStrainCurve({{1.0, NAN}}), InputError);
}

TEST(Reader, ParsesAndValidates) {
  std::istringstream good("# comment\nlambda,stress_mpa\n1.0,0\n1.5,0.2\n");
  EXPECT_EQ(read_stress_strain(good).size(), 2u);
  std::istringstream no_header("1.0,0\n");
  EXPECT_THROW(read_stress_strain(no_header), InputError);
  std::istringstream junk("lambda,stress_mpa\n1.0,abc\n");
  EXPECT_THROW(read_stress_strain(junk), InputError);
  EXPECT_THROW(read_stress_strain(std::filesystem::path("/nonexistent/curve.csv")), IoError);
}

TEST(Reader, BundledSyntheticCurveRoundTrips) {
  const auto curve =
      read_stress_strain(std::filesystem::path(KRESLING_DATA_DIR) / "e615_synthetic.csv");
  const auto fit = fit_yeoh(curve);
  const auto c = materials::e615();
  EXPECT_LT(rel(fit.coeffs.c10, c.c10), 1e-6);
  EXPECT_LT(rel(fit.coeffs.c20, c.c20), 1e-5);
}
