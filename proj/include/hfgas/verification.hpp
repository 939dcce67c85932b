#pragma once

#include <Eigen/Dense>
#include <random>

namespace hfgas {

/// 2x2 complex matrix tagged with the structural properties it satisfies.
struct SpinMatrix {
  Eigen::Matrix2cd m;
  bool hermitian = false;
  bool unitary = false;
  bool diagonal = false;

  /// Checks each property numerically (tolerance 1e-12) and sets the flags.
  static SpinMatrix classify(const Eigen::Matrix2cd& m);
  static SpinMatrix diag(double a, double b);
};

/// tr(D1 D2) - tr(D1 U D2 U*). D1 and D2 must be real diagonal with
/// non-increasing entries, U unitary; throws std::invalid_argument otherwise.
double rearrangement_gap(const SpinMatrix& D1, const SpinMatrix& D2, const SpinMatrix& U);

/// (D1_11 - D1_22)(D2_11 - D2_22)(1 - |U_11|^2).
double rearrangement_gap_closed_form(const SpinMatrix& D1, const SpinMatrix& D2,
                                     const SpinMatrix& U);

/// Haar-distributed SU(2) element from a normalized 4D Gaussian quaternion.
SpinMatrix haar_su2(std::mt19937_64& rng);

/// Global minimizer of x^q + (1-x)^q - lambda (x^p + (1-x)^p) on [0, 1/2] by a
/// dense scan refined with golden section. Requires 1 < p < 2 and 1 < q < 2
/// with p != q.
double flambda_minimizer(double p, double q, double lambda);

}  // namespace hfgas
