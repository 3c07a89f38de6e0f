#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace kresling::numeric {

/// Second-order difference of f at x with one Richardson extrapolation step,
/// using a fixed step `h0`. Central in the interior of [lo, hi]; one-sided
/// within h0 of either end.
double richardson_derivative(const std::function<double(double)>& f, double x, double lo,
                             double hi, double h0);

struct DerivativeCheck {
  double value;    ///< extrapolated estimate at step h
  double refined;  ///< extrapolated estimate at step h/2
  double step;     ///< h actually used for `value`
  bool verified;   ///< |value - refined| <= rel_tol*|refined| + abs_tol
};

/// Richardson estimate verified against the same estimate at half the step.
/// Halves the step up to `max_halvings` times until the two agree.
DerivativeCheck verified_derivative(const std::function<double(double)>& f, double x, double lo,
                                    double hi, double h0, double rel_tol, double abs_tol,
                                    int max_halvings = 6);

/// Bisection for a sign change of f on [lo, hi]; runs until the bracket can no
/// longer shrink. Returns the endpoint with the smaller |f|.
double bisect(const std::function<double(double)>& f, double lo, double hi);

}  // namespace kresling::numeric
