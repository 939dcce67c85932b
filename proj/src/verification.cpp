#include "hfgas/verification.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hfgas/optimize.hpp"
#include "hfgas/zero_temperature.hpp"

namespace hfgas {

namespace {

constexpr double kTol = 1e-12;
constexpr int kScanPoints = 20001;

}  // namespace

SpinMatrix SpinMatrix::classify(const Eigen::Matrix2cd& m) {
  SpinMatrix out;
  out.m = m;
  out.hermitian = (m - m.adjoint()).cwiseAbs().maxCoeff() <= kTol;
  out.unitary = (m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= kTol;
  out.diagonal = std::abs(m(0, 1)) <= kTol && std::abs(m(1, 0)) <= kTol;
  return out;
}

SpinMatrix SpinMatrix::diag(double a, double b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return classify(m);
}

namespace {

void require_ordered_diagonal(const SpinMatrix& D, const char* name) {
  if (!D.diagonal || !D.hermitian) {
    throw std::invalid_argument(std::string("rearrangement_gap: ") + name +
                                " must be real diagonal");
  }
  if (D.m(0, 0).real() < D.m(1, 1).real()) {
    throw std::invalid_argument(std::string("rearrangement_gap: ") + name +
                                " eigenvalues must be non-increasing");
  }
}

}  // namespace

double rearrangement_gap(const SpinMatrix& D1, const SpinMatrix& D2, const SpinMatrix& U) {
  require_ordered_diagonal(D1, "D1");
  require_ordered_diagonal(D2, "D2");
  if (!U.unitary) throw std::invalid_argument("rearrangement_gap: U must be unitary");
  const double aligned = (D1.m * D2.m).trace().real();
  const double rotated = (D1.m * U.m * D2.m * U.m.adjoint()).trace().real();
  return aligned - rotated;
}

double rearrangement_gap_closed_form(const SpinMatrix& D1, const SpinMatrix& D2,
                                     const SpinMatrix& U) {
  const double a1 = (D1.m(0, 0) - D1.m(1, 1)).real();
  const double a2 = (D2.m(0, 0) - D2.m(1, 1)).real();
  return a1 * a2 * (1.0 - std::norm(U.m(0, 0)));
}

SpinMatrix haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double a, b, c, d, n;
  do {
    a = normal(rng);
    b = normal(rng);
    c = normal(rng);
    d = normal(rng);
    n = std::sqrt(a * a + b * b + c * c + d * d);
  } while (n < 1e-12);
  a /= n;
  b /= n;
  c /= n;
  d /= n;
  Eigen::Matrix2cd u;
  u(0, 0) = {a, b};
  u(0, 1) = {c, d};
  u(1, 0) = {-c, d};
  u(1, 1) = {a, -b};
  return SpinMatrix::classify(u);
}

double flambda_minimizer(double p, double q, double lambda) {
  if (!(p > 1.0 && p < 2.0 && q > 1.0 && q < 2.0) || p == q) {
    throw std::invalid_argument("flambda_minimizer: need 1 < p, q < 2 and p != q");
  }
  const FLambda f{p, q};
  auto F = [&](double x) { return f(lambda, x); };
  const double h = 0.5 / (kScanPoints - 1);
  int best = 0;
  double best_value = F(0.0);
  for (int i = 1; i < kScanPoints; ++i) {
    const double v = F(i * h);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  const double lo = std::max(0, best - 1) * h;
  const double hi = std::min(kScanPoints - 1, best + 1) * h;
  const ScalarMinimum m = golden_section(F, lo, hi, 1e-12);
  // Snap to an endpoint when the refined point sits on it up to round-off.
  const double slack = 8 * std::numeric_limits<double>::epsilon() * std::abs(m.value);
  for (double end : {0.0, 0.5}) {
    if (std::abs(m.x - end) <= 1e-6 && F(end) <= m.value + slack) return end;
  }
  return m.x;
}

}  // namespace hfgas
