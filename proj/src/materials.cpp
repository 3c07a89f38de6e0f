#include "kresling/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "kresling/errors.hpp"

namespace kresling {

namespace materials {

YeohCoefficients ecoflex_0030() { return {0.00364188, 0.000573251, -3.93058e-06}; }
YeohCoefficients e615() { return {0.0727207, 0.00527073, -7.73102e-05}; }
YeohCoefficients dragonskin_ecoflex_mixture() { return {0.0683405, 0.00958809, -0.000363852}; }

}  // namespace materials

namespace {

double uniaxial_invariant(double lambda) { return lambda * lambda + 2.0 / lambda; }

// d(stress)/dC_i0 at stretch lambda.
double stress_basis(double lambda, int i) {
  const double x = uniaxial_invariant(lambda) - 3.0;
  return 2.0 * (lambda - 1.0 / (lambda * lambda)) * i * std::pow(x, i - 1);
}

}  // namespace

StressStrainCurve::StressStrainCurve(std::vector<StressSample> samples)
    : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.stretch) || !std::isfinite(s.stress_mpa)) {
      throw InputError(fmt::format("sample {} is not finite", i));
    }
    if (!(s.stretch > 0.0)) {
      throw InputError(fmt::format("sample {}: stretch must be > 0 (got {})", i, s.stretch));
    }
    if (i > 0 && !(s.stretch > samples_[i - 1].stretch)) {
      throw InputError(fmt::format("stretch must be strictly increasing (sample {}: {} after {})",
                                   i, s.stretch, samples_[i - 1].stretch));
    }
  }
}

double first_invariant(double l1, double l2, double l3) {
  if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0)) {
    throw DomainError(fmt::format("principal stretches must be > 0 (got {}, {}, {})", l1, l2, l3));
  }
  return l1 * l1 + l2 * l2 + l3 * l3;
}

double yeoh_energy_density(const YeohCoefficients& coeffs, double i1) {
  // Real stretches give I1 >= 3; allow roundoff just below.
  if (!(i1 >= 3.0 - 1e-12)) {
    throw DomainError(fmt::format("I1 must be >= 3 (got {})", i1));
  }
  const double x = i1 - 3.0;
  return x * (coeffs.c10 + x * (coeffs.c20 + x * coeffs.c30));
}

double uniaxial_energy(const YeohCoefficients& coeffs, double lambda) {
  const double lateral = 1.0 / std::sqrt(lambda);
  return yeoh_energy_density(coeffs, first_invariant(lambda, lateral, lateral));
}

double uniaxial_nominal_stress(const YeohCoefficients& coeffs, double lambda) {
  if (!(lambda > 0.0)) throw DomainError(fmt::format("stretch must be > 0 (got {})", lambda));
  const double x = uniaxial_invariant(lambda) - 3.0;
  const double dw_di1 = coeffs.c10 + x * (2.0 * coeffs.c20 + x * 3.0 * coeffs.c30);
  return 2.0 * (lambda - 1.0 / (lambda * lambda)) * dw_di1;
}

FitReport fit_yeoh(const StressStrainCurve& curve, int terms) {
  if (terms != 2 && terms != 3) {
    throw ArgumentError(fmt::format("Yeoh fit supports 2 or 3 terms (got {})", terms));
  }
  const auto& samples = curve.samples();
  if (samples.size() < 4) {
    throw FitError(fmt::format("need at least 4 samples (got {})", samples.size()));
  }

  const auto [lo, hi] = std::minmax_element(
      samples.begin(), samples.end(),
      [](const StressSample& x, const StressSample& y) { return x.stress_mpa < y.stress_mpa; });
  if (hi->stress_mpa - lo->stress_mpa <= 1e-12 * std::max(1.0, std::abs(hi->stress_mpa))) {
    throw FitError("degenerate curve: stress is constant over every sample");
  }
  if (samples.front().stretch > 1.0 + 1e-9 || samples.back().stretch < 1.5) {
    throw FitError(fmt::format("samples must span lambda in [1, 1.5] (got [{}, {}])",
                               samples.front().stretch, samples.back().stretch));
  }
  const double stress_scale = std::max(std::abs(lo->stress_mpa), std::abs(hi->stress_mpa));
  if (std::abs(samples.front().stretch - 1.0) > 1e-9 ||
      std::abs(samples.front().stress_mpa) > 1e-3 * stress_scale) {
    throw FitError(fmt::format(
        "curve must start at lambda = 1 with zero stress (got lambda = {}, stress = {} MPa)",
        samples.front().stretch, samples.front().stress_mpa));
  }

  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(rows, terms);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& s = samples[static_cast<std::size_t>(r)];
    for (int i = 1; i <= terms; ++i) design(r, i - 1) = stress_basis(s.stretch, i);
    target(r) = s.stress_mpa;
  }

  // Column scaling keeps the QR rank decision independent of coefficient size.
  const Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (int j = 0; j < terms; ++j) {
    if (!(scale(j) > 0.0)) throw FitError("rank-deficient design: a basis column vanishes");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-12);
  if (qr.rank() < terms) {
    throw FitError(fmt::format("rank-deficient design (rank {} < {})", qr.rank(), terms));
  }
  const Eigen::VectorXd solution = qr.solve(target).cwiseQuotient(scale);

  FitReport report;
  report.terms = terms;
  report.coeffs = {solution(0), solution(1), terms == 3 ? solution(2) : 0.0};
  if (!(report.coeffs.c10 > 0.0)) {
    throw FitError(fmt::format("fitted C10 must be > 0 (got {})", report.coeffs.c10));
  }
  const Eigen::VectorXd residual = design * solution - target;
  report.residual_norm = residual.norm();
  report.residuals.assign(residual.data(), residual.data() + residual.size());
  return report;
}

StressStrainCurve read_stress_strain(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<StressSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "lambda,stress_mpa") {
        throw InputError(fmt::format("line {}: expected header 'lambda,stress_mpa'", line_no));
      }
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string first, second;
    if (!std::getline(fields, first, ',') || !std::getline(fields, second)) {
      throw InputError(fmt::format("line {}: expected two comma-separated values", line_no));
    }
    try {
      std::size_t used1 = 0, used2 = 0;
      const double lambda = std::stod(first, &used1);
      const double stress = std::stod(second, &used2);
      if (used1 != first.size() || used2 != second.size()) throw std::invalid_argument("tail");
      samples.push_back({lambda, stress});
    } catch (const std::logic_error&) {
      throw InputError(fmt::format("line {}: cannot parse '{}'", line_no, line));
    }
  }
  if (!header_seen) throw InputError("missing header 'lambda,stress_mpa'");
  return StressStrainCurve(std::move(samples));
}

StressStrainCurve read_stress_strain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return read_stress_strain(in);
}

}  // namespace kresling
