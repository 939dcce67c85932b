#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hfgas/kernels.hpp"

namespace hfgas {

/// Panel layout for the radial momentum grid. The core [0, core_factor * k_star]
/// is split into equal panels, the tail up to k_max into geometrically
/// growing panels. Each panel carries `order` Gauss-Legendre nodes.
struct GridSpec {
  int order = 16;
  int core_panels = 26;
  int tail_panels = 6;
  double core_factor = 1.5;
  double k_star = 0.0;  ///< characteristic Fermi momentum
  double k_max = 0.0;   ///< cutoff

  int size() const { return order * (core_panels + tail_panels); }

  /// k_star = (6 pi^2 rho_max)^(1/3), k_max = 4 max(k_star, sqrt(80 T_max)).
  static GridSpec for_problem(double rho_max, double T_max, int nodes = 512);

  /// Same layout with twice as many panels everywhere.
  GridSpec refined() const;
};

/// Radial grid in d = 3 with the product-integration convolution matrix
/// (W g)_i = integral_0^k_max K(k_i, k') g(k') k'^2 dk', where g is
/// interpolated by its panel-wise Lagrange polynomial.
class RadialGrid {
 public:
  RadialGrid(const RieszPotential& pot, const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double k_max() const { return breaks_.back(); }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  /// Weights for integral_0^k_max f(k) k^2 dk.
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& convolution() const { return conv_; }
  const std::vector<double>& breaks() const { return breaks_; }

  /// (2 pi)^-3 * 4 pi * integral g k^2 dk.
  double density(const Eigen::VectorXd& g) const;
  /// Prefactor (2 pi)^-3 * 4 pi applied to weights in density().
  static double density_prefactor();

  Eigen::VectorXd convolve(const Eigen::VectorXd& g) const { return conv_ * g; }

 private:
  GridSpec spec_;
  std::vector<double> breaks_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd conv_;
};

}  // namespace hfgas
