#include "hfgas/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hfgas/errors.hpp"
#include "hfgas/quadrature.hpp"

namespace hfgas {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int d) {
  if (d < 1) {
    throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(d));
  }
}

void require_exponent(int d, double s) {
  require_dimension(d);
  if (!(s > 0.0 && s < d)) {
    throw std::invalid_argument("Riesz exponent s must lie in (0, d); got s=" +
                                std::to_string(s) + ", d=" + std::to_string(d));
  }
}

// integral_0^a sin^n(phi) dphi by the standard reduction formula.
double sine_power_integral(int n, double a) {
  double even = a;
  double odd = 1.0 - std::cos(a);
  if (n == 0) return even;
  if (n == 1) return odd;
  const double sa = std::sin(a);
  const double ca = std::cos(a);
  double prev2 = (n % 2 == 0) ? even : odd;
  for (int m = (n % 2 == 0) ? 2 : 3; m <= n; m += 2) {
    prev2 = -std::pow(sa, m - 1) * ca / m + (m - 1.0) / m * prev2;
  }
  return prev2;
}

// Volume of the intersection of two unit balls in R^d at distance u in [0, 2].
double lens_volume(int d, double u) {
  const double half_angle = std::acos(std::clamp(0.5 * u, -1.0, 1.0));
  return 2.0 * ball_volume(d - 1) * sine_power_integral(d, half_angle);
}

// (a^(s-1) - b^(s-1)) / (s - 1), with the logarithmic limit at s = 1.
double power_difference(double a, double b, double s) {
  const double e = s - 1.0;
  if (b == 0.0) {
    return e > 0.0 ? std::pow(a, e) / e : std::numeric_limits<double>::infinity();
  }
  const double log_ratio = std::log(a / b);
  if (e == 0.0) {
    return log_ratio;
  }
  return std::pow(b, e) * std::expm1(e * log_ratio) / e;
}

}  // namespace

void RieszPotential::validate() const {
  require_dimension(dimension);
  if (terms.empty()) {
    throw std::invalid_argument("RieszPotential needs at least one term");
  }
  for (const auto& t : terms) {
    if (!(t.kappa > 0.0)) {
      throw std::invalid_argument("Riesz coupling kappa must be > 0");
    }
    require_exponent(dimension, t.s);
  }
}

double RieszPotential::operator()(double k) const {
  double w = 0.0;
  for (const auto& t : terms) {
    w += t.kappa * std::pow(k, t.s - dimension);
  }
  return w;
}

RieszPotential RieszPotential::coulomb() {
  return RieszPotential{3, {{1.0 / (2.0 * kPi * kPi), 1.0}}};
}

RieszPotential RieszPotential::riesz(int d, double s, double alpha) {
  require_exponent(d, s);
  return RieszPotential{d, {{alpha * riesz_normalization(d, s), s}}};
}

RieszPotential RieszPotential::from_reduced_exchange(
    int d, const std::vector<std::pair<double, double>>& lambda_and_s) {
  RieszPotential pot{d, {}};
  const double kin = kinetic_coefficient(d);
  for (const auto& [lambda, s] : lambda_and_s) {
    require_exponent(d, s);
    const double alpha = lambda * kin / exchange_coefficient(d, s);
    pot.terms.push_back({alpha * riesz_normalization(d, s), s});
  }
  pot.validate();
  return pot;
}

double surface_area(int d) {
  require_dimension(d);
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d) {
  if (d < 0) {
    throw std::invalid_argument("ball_volume: negative dimension");
  }
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double thomas_fermi_constant(int d) {
  require_dimension(d);
  return 4.0 * kPi * kPi * std::pow(d / surface_area(d), 2.0 / d);
}

double riesz_normalization(int d, double s) {
  require_exponent(d, s);
  return std::pow(2.0 * kPi, -0.5 * d) * std::pow(2.0, 0.5 * (d - s) - 0.5 * s) *
         std::tgamma(0.5 * (d - s)) / std::tgamma(0.5 * s);
}

double dirac_constant(int d, double s) {
  require_exponent(d, s);
  // c_D = |S^(d-1)| * integral_0^2 u^(s-1) lens(u) du, split at u = 1.
  // On [0, h] the lens is linear to O(h^2), so that piece is done exactly.
  constexpr double ratio = 0.3;
  constexpr int levels = 28;
  const double h = std::pow(ratio, levels);
  const double inner_tip = lens_volume(d, 0.0) * std::pow(h, s) / s -
                           ball_volume(d - 1) * std::pow(h, s + 1.0) / (s + 1.0);
  auto estimate = [&](int order) {
    const QuadratureRule ref = gauss_legendre(order);
    double inner = inner_tip;
    for (int m = levels; m >= 1; --m) {
      const QuadratureRule piece =
          map_rule(ref, std::pow(ratio, m), std::pow(ratio, m - 1));
      for (std::size_t i = 0; i < piece.size(); ++i) {
        const double u = piece.nodes[i];
        inner += piece.weights[i] * std::pow(u, s - 1.0) * lens_volume(d, u);
      }
    }
    // u = 2 - v^2 removes the (2 - u)^((d+1)/2) endpoint behaviour.
    const QuadratureRule outer = map_rule(ref, 0.0, 1.0);
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const double v = outer.nodes[i];
      const double u = 2.0 - v * v;
      inner += outer.weights[i] * 2.0 * v * std::pow(u, s - 1.0) * lens_volume(d, u);
    }
    return surface_area(d) * inner;
  };
  double previous = estimate(12);
  double change = 0.0;
  for (int order : {24, 48, 96}) {
    const double current = estimate(order);
    change = std::abs(current - previous) / std::abs(current);
    previous = current;
    if (change <= 1e-13) {
      return current;
    }
  }
  if (change > 1e-9) {
    throw QuadratureError("dirac_constant: quadrature did not converge", change);
  }
  return previous;
}

double kinetic_coefficient(int d) {
  require_dimension(d);
  return 2.0 * kPi * kPi * d / (d + 2.0) * std::pow(d / surface_area(d), 2.0 / d);
}

double exchange_coefficient(int d, double s) {
  require_exponent(d, s);
  return 1.0 / (2.0 * std::pow(kPi, 0.5 * d - s)) *
         std::pow(d / surface_area(d), (d + s) / d) * std::tgamma(0.5 * (d - s)) /
         std::tgamma(0.5 * s) * dirac_constant(d, s);
}

ModelConstants energy_coefficients(const RieszPotential& pot) {
  pot.validate();
  const int d = pot.dimension;
  ModelConstants mc;
  mc.c_tf = thomas_fermi_constant(d);
  mc.kappa_d = kinetic_coefficient(d);
  for (const auto& t : pot.terms) {
    const double cds = riesz_normalization(d, t.s);
    mc.c_ds.push_back(cds);
    mc.c_dirac.push_back(dirac_constant(d, t.s));
    mc.lambda.push_back(t.kappa / cds * exchange_coefficient(d, t.s));
  }
  return mc;
}

double angular_kernel_offset(const RieszPotential& pot, double k, double delta) {
  if (pot.dimension != 3) {
    throw std::invalid_argument("angular_kernel_offset: closed form needs d = 3");
  }
  const double kp = k + delta;
  double total = 0.0;
  for (const auto& t : pot.terms) {
    total += 2.0 * kPi * t.kappa / (k * kp) *
             power_difference(2.0 * k + delta, std::abs(delta), t.s);
  }
  return total;
}

double angular_kernel(const RieszPotential& pot, double k, double kp) {
  pot.validate();
  if (!(k > 0.0) || !(kp > 0.0)) {
    throw std::invalid_argument("angular_kernel: momenta must be positive");
  }
  const int d = pot.dimension;
  if (d == 3) {
    return angular_kernel_offset(pot, k, kp - k);
  }
  if (d == 1) {
    double total = 0.0;
    for (const auto& t : pot.terms) {
      const double gap = std::abs(k - kp);
      const double near = gap == 0.0 ? std::numeric_limits<double>::infinity()
                                     : std::pow(gap, t.s - 1.0);
      total += t.kappa * (near + std::pow(k + kp, t.s - 1.0));
    }
    return total;
  }
  return angular_kernel_quadrature(pot, k, kp);
}

double angular_kernel_quadrature(const RieszPotential& pot, double k, double kp) {
  pot.validate();
  const int d = pot.dimension;
  if (d < 2) {
    throw std::invalid_argument("angular_kernel_quadrature: needs d >= 2");
  }
  const double gap = k - kp;
  if (gap == 0.0) {
    for (const auto& t : pot.terms) {
      if (t.s <= 1.0) {
        return std::numeric_limits<double>::infinity();
      }
    }
  }
  const GradedRule rule = graded_offsets(kPi, 16, 0.3, 40, 1.0);
  const double sphere = surface_area(d - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.offsets.size(); ++i) {
    const double theta = rule.offsets[i];
    const double half_sin = std::sin(0.5 * theta);
    const double q2 = gap * gap + 4.0 * k * kp * half_sin * half_sin;
    const double jacobian = std::pow(std::sin(theta), d - 2);
    double w = 0.0;
    for (const auto& t : pot.terms) {
      w += t.kappa * std::pow(q2, 0.5 * (t.s - d));
    }
    total += rule.weights[i] * w * jacobian;
  }
  return sphere * total;
}

}  // namespace hfgas
