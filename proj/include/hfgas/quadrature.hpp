#pragma once

#include <functional>
#include <vector>

namespace hfgas {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Affine map of a rule on [-1, 1] onto [a, b].
QuadratureRule map_rule(const QuadratureRule& reference, double a, double b);

/// Composite Gauss-Legendre rule on [a, b] whose sub-intervals shrink
/// geometrically toward one endpoint. Integrates functions with an integrable
/// (log or algebraic) singularity at that endpoint. The sub-interval closest
/// to the singular point has length (b - a) * ratio^levels and is treated with
/// the substitution x = h * y^(1/exponent) so that x^(exponent-1) singularities
/// are integrated exactly by the inner rule.
///
/// Nodes are returned as offsets from the singular endpoint (always positive)
/// so callers can evaluate kernels in a cancellation-free way.
struct GradedRule {
  std::vector<double> offsets;
  std::vector<double> weights;
};

GradedRule graded_offsets(double length, int order = 12, double ratio = 0.3,
                          int levels = 28, double exponent = 1.0);

/// Integrate f over [a, b] with composite Gauss-Legendre panels, doubling the
/// panel count until two successive estimates agree to `rtol` (relative) or
/// `max_panels` is reached. Returns the last estimate; `achieved` receives the
/// difference between the last two estimates.
double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, double rtol, int order = 20,
                           int max_panels = 4096, double* achieved = nullptr);

}  // namespace hfgas
