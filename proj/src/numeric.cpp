#include "kresling/numeric.hpp"

#include "kresling/errors.hpp"

namespace kresling::numeric {

namespace {

enum class Stencil { Central, Forward, Backward };

struct Step {
  Stencil stencil;
  double h;
};

// Central differences need h of room on both sides; within h0 of an end of
// the domain the stencil turns one-sided towards the interior.
Step choose_step(double x, double lo, double hi, double h0) {
  if (!(x >= lo && x <= hi)) {
    throw DomainError("derivative requested outside the domain of its function");
  }
  const double left = x - lo;
  const double right = hi - x;
  if (left >= h0 && right >= h0) return {Stencil::Central, h0};
  if (right >= 2.0 * h0) return {Stencil::Forward, h0};
  if (left >= 2.0 * h0) return {Stencil::Backward, h0};
  throw DomainError("derivative domain is narrower than the difference stencil");
}

double difference(const std::function<double(double)>& f, double x, Stencil stencil, double h) {
  switch (stencil) {
    case Stencil::Central: return (f(x + h) - f(x - h)) / (2.0 * h);
    case Stencil::Forward: return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
    case Stencil::Backward: return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  }
  return 0.0;
}

// All three stencils have an O(h^2) leading error, removed by one Richardson step.
double extrapolated(const std::function<double(double)>& f, double x, Step step) {
  const double coarse = difference(f, x, step.stencil, step.h);
  const double fine = difference(f, x, step.stencil, 0.5 * step.h);
  return fine + (fine - coarse) / 3.0;
}

}  // namespace

double richardson_derivative(const std::function<double(double)>& f, double x, double lo,
                             double hi, double h0) {
  return extrapolated(f, x, choose_step(x, lo, hi, h0));
}

DerivativeCheck verified_derivative(const std::function<double(double)>& f, double x, double lo,
                                    double hi, double h0, double rel_tol, double abs_tol,
                                    int max_halvings) {
  Step step = choose_step(x, lo, hi, h0);
  DerivativeCheck check{};
  for (int i = 0; i <= max_halvings; ++i, step.h *= 0.5) {
    check.value = extrapolated(f, x, step);
    check.refined = extrapolated(f, x, {step.stencil, 0.5 * step.h});
    check.step = step.h;
    check.verified =
        std::abs(check.value - check.refined) <= rel_tol * std::abs(check.refined) + abs_tol;
    if (check.verified) break;
  }
  return check;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoEquilibriumError("bisection bracket has no sign change");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace kresling::numeric
