#pragma once

#include <utility>
#include <vector>

namespace hfgas {

/// One Fourier-side Riesz term kappa * |k|^(s - d).
struct RieszTerm {
  double kappa;
  double s;
};

/// Interaction w(k) = sum_i kappa_i |k|^(s_i - d) in dimension d.
///
/// Couplings are stored on the Fourier side. A real-space interaction
/// alpha / |x|^s corresponds to kappa = alpha * riesz_normalization(d, s).
struct RieszPotential {
  int dimension = 3;
  std::vector<RieszTerm> terms;

  /// Throws std::invalid_argument unless d >= 1, terms is non-empty, every
  /// kappa > 0 and every s lies strictly inside (0, d).
  void validate() const;

  /// w(k) for k > 0.
  double operator()(double k) const;

  /// The 3D Coulomb interaction w(k) = 1 / (2 pi^2 k^2).
  static RieszPotential coulomb();

  /// Real-space alpha / |x|^s in dimension d.
  static RieszPotential riesz(int d, double s, double alpha = 1.0);

  /// Terms specified by reduced exchange strengths lambda_i, so that the
  /// zero-temperature energy reads
  ///   kappa(d) [rho^(1+2/d) - sum_i lambda_i rho^(1+s_i/d)]
  /// up to the polarization factors.
  static RieszPotential from_reduced_exchange(
      int d, const std::vector<std::pair<double, double>>& lambda_and_s);
};

/// Closed-form zero-temperature energy coefficients of a Riesz potential.
struct ModelConstants {
  double c_tf = 0.0;     ///< Thomas-Fermi constant
  double kappa_d = 0.0;  ///< kinetic coefficient kappa(d)
  std::vector<double> lambda;  ///< exchange coefficient per term, coupling-scaled
  std::vector<double> c_dirac;  ///< Dirac-type double integral per term
  std::vector<double> c_ds;     ///< real-space normalization per term
};

/// |S^(d-1)| = 2 pi^(d/2) / Gamma(d/2).
double surface_area(int d);

/// Volume of the unit ball in R^d.
double ball_volume(int d);

/// c_TF = 4 pi^2 (d / |S^(d-1)|)^(2/d); the Fermi ball of density rho has
/// radius^2 = c_TF rho^(2/d).
double thomas_fermi_constant(int d);

/// c_{d,s}: Fourier-side coefficient of the real-space interaction |x|^-s.
double riesz_normalization(int d, double s);

/// Double integral over two unit balls of |k - k'|^(s - d), i.e. the same
/// exponent as the Fourier-side kernel of the interaction |x|^-s. Equals
/// 4 pi^2 for (d, s) = (3, 1). Evaluated as a one-dimensional integral over
/// the lens volume of two intersecting balls.
double dirac_constant(int d, double s);

/// kappa(d) = 2 pi^2 d / (d + 2) (d / |S^(d-1)|)^(2/d).
double kinetic_coefficient(int d);

/// lambda(d, s) for unit real-space coupling |x|^-s.
double exchange_coefficient(int d, double s);

ModelConstants energy_coefficients(const RieszPotential& pot);

/// K(k, k') = integral over the unit sphere of w(k e_1 - k' omega), so that
/// (w * g)(k) = integral_0^inf K(k, k') g(k') k'^(d-1) dk' for radial g.
/// Returns +infinity on the diagonal when the kernel is not integrable there.
double angular_kernel(const RieszPotential& pot, double k, double kp);

/// K(k, k + delta), evaluated without forming k + delta - k. Only d = 3.
double angular_kernel_offset(const RieszPotential& pot, double k, double delta);

/// Angular integral by graded Gauss-Legendre quadrature in the polar angle,
/// valid for any d >= 2. Used for d != 3 and to validate the closed forms.
double angular_kernel_quadrature(const RieszPotential& pot, double k, double kp);

}  // namespace hfgas
