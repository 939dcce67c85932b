#include "hfgas/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hfgas {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: order must be >= 1");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureRule map_rule(const QuadratureRule& reference, double a, double b) {
  QuadratureRule out;
  out.nodes.resize(reference.size());
  out.weights.resize(reference.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < reference.size(); ++i) {
    out.nodes[i] = mid + half * reference.nodes[i];
    out.weights[i] = half * reference.weights[i];
  }
  return out;
}

GradedRule graded_offsets(double length, int order, double ratio, int levels,
                          double exponent) {
  if (!(length > 0.0) || !(ratio > 0.0 && ratio < 1.0) || levels < 1 ||
      !(exponent > 0.0)) {
    throw std::invalid_argument("graded_offsets: invalid parameters");
  }
  const QuadratureRule ref = gauss_legendre(order);
  GradedRule out;
  out.offsets.reserve(static_cast<std::size_t>(order) * (levels + 1));
  out.weights.reserve(out.offsets.capacity());

  // Innermost piece [0, h]: x = h * y^(1/e), dx = (h/e) y^(1/e - 1) dy.
  const double h = length * std::pow(ratio, levels);
  for (int i = 0; i < order; ++i) {
    const double y = 0.5 * (ref.nodes[i] + 1.0);
    const double wy = 0.5 * ref.weights[i];
    const double x = h * std::pow(y, 1.0 / exponent);
    out.offsets.push_back(x);
    out.weights.push_back(wy * (h / exponent) * std::pow(y, 1.0 / exponent - 1.0));
  }
  for (int m = levels; m >= 1; --m) {
    const double lo = length * std::pow(ratio, m);
    const double hi = length * std::pow(ratio, m - 1);
    const QuadratureRule piece = map_rule(ref, lo, hi);
    out.offsets.insert(out.offsets.end(), piece.nodes.begin(), piece.nodes.end());
    out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
  }
  return out;
}

double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, double rtol, int order, int max_panels,
                           double* achieved) {
  const QuadratureRule ref = gauss_legendre(order);
  auto estimate = [&](int panels) {
    double sum = 0.0;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const QuadratureRule r = map_rule(ref, a + p * width, a + (p + 1) * width);
      for (std::size_t i = 0; i < r.size(); ++i) {
        sum += r.weights[i] * f(r.nodes[i]);
      }
    }
    return sum;
  };
  double previous = estimate(1);
  double diff = std::numeric_limits<double>::infinity();
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    const double current = estimate(panels);
    diff = std::abs(current - previous);
    previous = current;
    if (diff <= rtol * std::abs(current)) {
      break;
    }
  }
  if (achieved != nullptr) {
    *achieved = diff;
  }
  return previous;
}

}  // namespace hfgas
