#pragma once

#include <functional>

namespace hfgas {

struct ScalarMinimum {
  double x;
  double value;
};

/// Golden-section search for a minimum of f on [a, b], stopping once the
/// bracket is shorter than `tol`. The endpoints themselves are not compared;
/// callers that admit boundary minima must check them separately.
ScalarMinimum golden_section(const std::function<double(double)>& f, double a,
                             double b, double tol);

/// Bisection for a sign change of f on [a, b]. Requires f(a) and f(b) of
/// opposite sign (or zero). Stops when the bracket is shorter than `tol`.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol, int max_iter = 200);

}  // namespace hfgas
