#pragma once

#include <string>
#include <vector>

#include "hfgas/kernels.hpp"

namespace hfgas {

/// The one-parameter family f(x) = x^q + (1-x)^q - lambda (x^p + (1-x)^p)
/// on [0, 1/2], with q = (d+2)/d and p = (d+s)/d for a Riesz term.
struct FLambda {
  double p;
  double q;

  static FLambda from_riesz(int d, double s);

  double operator()(double lambda, double x) const;

  /// Regime with p < q < 2 (s < 2): single jump at lambda_critical().
  bool first_order() const { return p < q; }

  double lambda_critical() const;
  double lambda_min() const;
  double lambda_max() const;

  /// lambda(x) = (q/p)(x^(q-1) - (1-x)^(q-1)) / (x^(p-1) - (1-x)^(p-1)), the
  /// coupling for which x in (0, 1/2) is a critical point.
  double lambda_of_x(double x) const;

  /// Minimizer predicted by the closed-form classification. In the smooth
  /// regime the interior value is found by bisection on lambda_of_x.
  double minimizer(double lambda) const;
};

/// Zero-temperature energies of a (possibly multi-term) Riesz potential with
/// the coefficients evaluated once.
class ZeroTemperatureModel {
 public:
  explicit ZeroTemperatureModel(const RieszPotential& pot);

  int dimension() const { return dimension_; }
  const ModelConstants& constants() const { return constants_; }
  const std::vector<double>& exponents() const { return exponents_; }

  /// kappa(d) rho^(1+2/d) - sum_i lambda_i rho^(1+s_i/d).
  double energy(double rho) const;
  /// d energy / d rho.
  double chemical_potential(double rho) const;
  /// energy(t rho) + energy((1-t) rho) for t in [0, 1/2].
  double polarization_energy(double rho, double t) const;

 private:
  int dimension_;
  ModelConstants constants_;
  std::vector<double> exponents_;
};

double nospin_energy_T0(const RieszPotential& pot, double rho);
double mu_T0(const RieszPotential& pot, double rho);
double polarization_energy(const RieszPotential& pot, double rho, double t);

struct PolarizationSample {
  double t;
  double energy;
};

struct PolarizationCurve {
  double rho;
  std::vector<PolarizationSample> samples;
};

/// Samples P_rho on `points` uniform values of t covering [0, 1/2].
PolarizationCurve polarization_curve(const ZeroTemperatureModel& model, double rho,
                                     int points = 101);

enum class PhaseTag { paramagnetic, ferromagnetic, coexistence };

const char* to_string(PhaseTag tag);

struct PolarizationArgmin {
  double rho;
  double t;
  double energy;
  PhaseTag tag;
  /// Competing minimizer with the same energy (only for coexistence).
  double t_alt = -1.0;
};

/// Global minimizer of t -> P_rho(t) on [0, 1/2]: 2001-point scan, then
/// golden-section refinement of the three best local minima to 1e-6.
PolarizationArgmin minimize_polarization(const ZeroTemperatureModel& model, double rho);

/// minimize_polarization for every entry of an increasing density grid.
std::vector<PolarizationArgmin> scan_polarization(const RieszPotential& pot,
                                                  const std::vector<double>& rho_grid,
                                                  int workers = 1);

enum class TransitionKind { first_order, second_order, multiple };

const char* to_string(TransitionKind kind);

struct CriticalDensity {
  double rho;
  std::string label;
};

/// Exact transition structure of a single Riesz term.
struct TransitionReport {
  TransitionKind kind;
  std::vector<CriticalDensity> critical_densities;
  FLambda shape;
  /// lambda(d,s) / kappa(d) with the coupling included.
  double exchange_ratio;
  int dimension;
  double s;
  /// t_rho on a logarithmic density grid around the transition.
  std::vector<PolarizationSample> samples;

  /// Reduced coupling lambda = exchange_ratio / rho^((2-s)/d).
  double reduced_lambda(double rho) const;
  /// Optimal polarization t_rho from the closed-form classification.
  double polarization_at(double rho) const;
};

/// Throws std::invalid_argument for multi-term potentials and for s outside
/// (0, min(2,d)) and, when d >= 3, (2, d).
TransitionReport classify_transition(const RieszPotential& pot);

/// A change in the optimal polarization along a density scan.
struct TransitionEvent {
  double rho;
  TransitionKind kind;  ///< first_order for jumps, second_order for kinks
  std::string label;
  double t_below;
  double t_above;
};

/// Locates transitions between consecutive entries of `scan` and refines
/// their positions by bisection in rho to relative accuracy `rtol`.
std::vector<TransitionEvent> detect_transitions(const ZeroTemperatureModel& model,
                                                const std::vector<PolarizationArgmin>& scan,
                                                double rtol = 1e-9);

}  // namespace hfgas
