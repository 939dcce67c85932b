#include "hfgas/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hfgas/quadrature.hpp"

namespace hfgas {

namespace {

constexpr int kFarOrder = 30;
constexpr int kNearOrder = 12;
constexpr double kNearRatio = 0.15;
constexpr int kNearLevels = 15;

std::vector<double> barycentric_weights(const double* x, int n) {
  std::vector<double> w(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      if (m != j) w[j] /= (x[j] - x[m]);
    }
  }
  return w;
}

// Lagrange basis of the panel nodes evaluated at t, written into `out`.
void lagrange_basis(const double* x, const std::vector<double>& bw, double t,
                    std::vector<double>& out) {
  const int n = static_cast<int>(bw.size());
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double diff = t - x[j];
    if (diff == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      out[j] = 1.0;
      return;
    }
    out[j] = bw[j] / diff;
    sum += out[j];
  }
  for (int j = 0; j < n; ++j) out[j] /= sum;
}

}  // namespace

GridSpec GridSpec::for_problem(double rho_max, double T_max, int nodes) {
  if (!(rho_max > 0.0) || !(T_max >= 0.0)) {
    throw std::invalid_argument("GridSpec: need rho_max > 0 and T_max >= 0");
  }
  GridSpec spec;
  const int panels = std::max(4, nodes / spec.order);
  spec.tail_panels = std::max(2, static_cast<int>(std::lround(panels * 6.0 / 32.0)));
  spec.core_panels = panels - spec.tail_panels;
  spec.k_star = std::cbrt(6.0 * std::numbers::pi * std::numbers::pi * rho_max);
  spec.k_max = 4.0 * std::max(spec.k_star, std::sqrt(80.0 * T_max));
  return spec;
}

GridSpec GridSpec::refined() const {
  GridSpec out = *this;
  out.core_panels *= 2;
  out.tail_panels *= 2;
  return out;
}

RadialGrid::RadialGrid(const RieszPotential& pot, const GridSpec& spec) : spec_(spec) {
  pot.validate();
  if (pot.dimension != 3) {
    throw std::invalid_argument("RadialGrid: only d = 3 is supported");
  }
  const double k_core = spec.core_factor * spec.k_star;
  if (!(spec.k_star > 0.0) || !(spec.k_max > k_core) || spec.order < 2 ||
      spec.core_panels < 1 || spec.tail_panels < 1) {
    throw std::invalid_argument("RadialGrid: invalid grid specification");
  }
  for (int p = 0; p <= spec.core_panels; ++p) {
    breaks_.push_back(k_core * p / spec.core_panels);
  }
  for (int p = 1; p <= spec.tail_panels; ++p) {
    breaks_.push_back(k_core * std::pow(spec.k_max / k_core,
                                        static_cast<double>(p) / spec.tail_panels));
  }
  breaks_.back() = spec.k_max;

  const int order = spec.order;
  const int panels = static_cast<int>(breaks_.size()) - 1;
  const int n = order * panels;
  nodes_.resize(n);
  weights_.resize(n);
  const QuadratureRule ref = gauss_legendre(order);
  for (int p = 0; p < panels; ++p) {
    const QuadratureRule r = map_rule(ref, breaks_[p], breaks_[p + 1]);
    for (int j = 0; j < order; ++j) {
      nodes_[p * order + j] = r.nodes[j];
      weights_[p * order + j] = r.weights[j] * r.nodes[j] * r.nodes[j];
    }
  }

  double min_s = 1.0;
  for (const auto& t : pot.terms) min_s = std::min(min_s, t.s);
  const GradedRule unit_graded =
      graded_offsets(1.0, kNearOrder, kNearRatio, kNearLevels, min_s);
  const QuadratureRule far_ref = gauss_legendre(kFarOrder);

  conv_ = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> basis(order);
  for (int p = 0; p < panels; ++p) {
    const double a = breaks_[p];
    const double b = breaks_[p + 1];
    const double len = b - a;
    const double* xn = nodes_.data() + p * order;
    const std::vector<double> bw = barycentric_weights(xn, order);
    const QuadratureRule far = map_rule(far_ref, a, b);
    for (int i = 0; i < n; ++i) {
      const double ki = nodes_[i];
      std::vector<double> acc(order, 0.0);
      // Accumulate K(ki, t) t^2 w ell_j(t) with t = ki + delta.
      auto add = [&](double delta, double weight) {
        const double t = ki + delta;
        const double f = angular_kernel_offset(pot, ki, delta) * t * t * weight;
        lagrange_basis(xn, bw, t, basis);
        for (int j = 0; j < order; ++j) acc[j] += f * basis[j];
      };
      auto add_graded = [&](double anchor_gap, double length, double sign) {
        // Nodes anchor + sign * offset, anchor = ki + anchor_gap.
        for (std::size_t q = 0; q < unit_graded.offsets.size(); ++q) {
          add(anchor_gap + sign * length * unit_graded.offsets[q],
              length * unit_graded.weights[q]);
        }
      };
      if (ki < a - len || ki > b + len) {
        for (std::size_t q = 0; q < far.size(); ++q) add(far.nodes[q] - ki, far.weights[q]);
      } else if (ki > a && ki < b) {
        add_graded(0.0, ki - a, -1.0);
        add_graded(0.0, b - ki, 1.0);
      } else if (ki <= a) {
        add_graded(a - ki, len, 1.0);
      } else {
        add_graded(b - ki, len, -1.0);
      }
      for (int j = 0; j < order; ++j) conv_(i, p * order + j) = acc[j];
    }
  }
}

double RadialGrid::density_prefactor() {
  const double two_pi = 2.0 * std::numbers::pi;
  return 4.0 * std::numbers::pi / (two_pi * two_pi * two_pi);
}

double RadialGrid::density(const Eigen::VectorXd& g) const {
  return density_prefactor() * weights_.dot(g);
}

}  // namespace hfgas
