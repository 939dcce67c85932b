#pragma once

#include <string>
#include <vector>

#include "hfgas/radial_solver.hpp"
#include "hfgas/zero_temperature.hpp"

namespace hfgas {

/// One solution on the density-parametrized no-spin curve at fixed T.
struct CurvePoint {
  double rho;
  double mu;
  double free_energy;
  Branch branch;  ///< which mu-branch the solution belongs to
  double residual;
  bool radially_decreasing;
  double max_potential;  ///< max over nodes of V
};

/// E_no-spin(rho, T) and mu(rho, T) on a logarithmic density table, built by
/// Newton continuation in rho. Between nodes the energy is a cubic Hermite
/// interpolant with slopes mu; below the table a dilute-gas form
/// T rho log(rho/rho_lo) + a rho + b rho^2 matches value and slope.
class NoSpinCurve {
 public:
  static NoSpinCurve build(const NoSpinSolver& solver, double T, double rho_lo,
                           double rho_hi, int points);

  double temperature() const { return T_; }
  double rho_lo() const { return points_.front().rho; }
  double rho_hi() const { return points_.back().rho; }
  const std::vector<CurvePoint>& points() const { return points_; }

  double energy(double rho) const;
  double mu(double rho) const;

 private:
  double T_ = 0.0;
  std::vector<CurvePoint> points_;
};

enum class SpinMode { tabulated, direct };

struct SpinOptions {
  int coarse_points = 26;
  double t_tolerance = 1e-7;     ///< golden-section bracket length
  double para_tolerance = 1e-3;  ///< |t - 1/2| below this counts as paramagnetic
};

struct PhasePoint {
  double rho = 0.0;
  double T = 0.0;
  double t_opt = 0.5;
  double energy_opt = 0.0;
  double energy_para = 0.0;
  /// t -> 0 candidate: E(rho) + E(0), with E(0) = 0.
  double energy_ferro = 0.0;
  PhaseTag classification = PhaseTag::paramagnetic;
  double t_alt = -1.0;
  double mu_minor = 0.0;  ///< mu at density t rho
  double mu_major = 0.0;  ///< mu at density (1 - t) rho
  bool failed = false;
  std::string diagnostics;
};

/// Lowest-energy no-spin solution at density rho among the minimal,
/// maximal and middle branches that reach it.
FixedPointResult best_solution_at_density(const NoSpinSolver& solver, double rho, double T);

/// Minimizes t -> E(t rho) + E((1-t) rho) over [0, 1/2] using the table.
PhasePoint spin_energy(const NoSpinCurve& curve, double rho, const SpinOptions& opt = {});

/// Same minimization with each energy from a self-consistent solve at the
/// required density.
PhasePoint spin_energy_direct(const NoSpinSolver& solver, double rho, double T,
                              const SpinOptions& opt = {});

/// |mu(t rho) - mu((1-t) rho)| <= 1e-3 max |mu|; trivially true at t = 1/2.
bool matched_mu_check(const PhasePoint& point);

struct ContourSegment {
  double level;
  double rho0, T0, rho1, T1;
};

struct TransitionRow {
  double T;
  double rho_c1;  ///< NaN if no transition at this T
  double rho_c2;
};

struct PhaseDiagram {
  std::vector<double> rho_grid;
  std::vector<double> T_grid;
  /// cells[i][j] for rho_grid[i], T_grid[j].
  std::vector<std::vector<PhasePoint>> cells;
  std::vector<ContourSegment> contours;
  std::vector<TransitionRow> transitions;
  double curie_temperature = 0.0;
  bool curie_bracketed = false;
  int failed_cells = 0;
  /// Every converged curve point used, for invariant audits.
  std::vector<CurvePoint> audit_points;
};

struct SweepOptions {
  int workers = 1;
  int curve_points = 240;
  double curve_rho_lo = 1e-8;
  SpinOptions spin;
  std::vector<double> contour_levels{0.1, 0.2, 0.3, 0.4, 0.49};
  int curie_rho_points = 40;
  double curie_T_tolerance = 1e-4;
  /// t_opt below 1/2 - margin marks a cell as non-paramagnetic for T_c.
  double curie_margin = 0.01;
  double transition_rtol = 1e-4;
};

PhaseDiagram sweep(const RieszPotential& pot, const std::vector<double>& rho_grid,
                   const std::vector<double>& T_grid, const SolverConfig& cfg,
                   const SweepOptions& opt = {});

/// Marching squares on a rho x T matrix of values.
std::vector<ContourSegment> marching_squares(const std::vector<double>& rho_grid,
                                             const std::vector<double>& T_grid,
                                             const std::vector<std::vector<double>>& values,
                                             const std::vector<double>& levels);

struct MuCurveRow {
  double rho;
  double mu;
  Branch branch;
};

struct MuCurveOptions {
  int mu_points = 200;
  bool with_middle = true;
};

/// Multivalued rho <-> mu relation at temperature T. At T = 0 the closed form
/// is evaluated on rho_grid; at T > 0 mu is scanned over the range spanned by
/// rho_grid and extremal (plus middle) solutions are recorded.
std::vector<MuCurveRow> mu_curve(const RieszPotential& pot, double T,
                                 const std::vector<double>& rho_grid, const SolverConfig& cfg,
                                 const MuCurveOptions& opt = {});

}  // namespace hfgas
