#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hfgas/errors.hpp"
#include "hfgas/kernels.hpp"
#include "hfgas/radial_grid.hpp"

namespace hfgas {

enum class Branch { minimal, maximal, middle };

const char* to_string(Branch b);
/// Short CSV spelling: min, max, middle.
const char* short_name(Branch b);

struct SolverConfig {
  GridSpec grid;
  double tolerance = 1e-10;        ///< sup-norm of g - G(g)
  int max_iterations = 200000;
  double damping = 0.5;            ///< first polishing damping, fallback 0.1
  int beads = 32;
  int reparam_every = 1;
  int string_iterations = 400;
  double density_rtol = 1e-8;
  double monotone_slack = 1e-12;
  double decreasing_slack = 1e-9;

  void validate() const;
};

/// Outcome of a middle fixed-point search.
enum class MiddleStatus { found, no_middle_solution };

struct FixedPointResult {
  Eigen::VectorXd g;
  Eigen::VectorXd V;
  double mu = 0.0;
  double temperature = 0.0;
  double density = 0.0;
  double free_energy = 0.0;
  Branch branch = Branch::minimal;
  int iterations = 0;
  double residual = 0.0;
  /// Largest step against the expected direction of the monotone iteration.
  double monotone_excess = 0.0;
  MiddleStatus status = MiddleStatus::found;
  /// Number of residual-stationary beads on the converged string.
  int middle_candidates = 0;
};

/// Called with (iteration, iterate) before each monotone step.
using IterateObserver = std::function<void(int, const Eigen::VectorXd&)>;

/// Stable 1 / (1 + e^x), clamped to [1e-300, 1 - 1e-16].
double fermi_factor(double x);

/// Mean-field solver in d = 3 on a fixed radial grid. Immutable after
/// construction; concurrent calls on one instance are safe.
class NoSpinSolver {
 public:
  NoSpinSolver(RieszPotential pot, SolverConfig cfg);

  const RieszPotential& potential() const { return pot_; }
  const SolverConfig& config() const { return cfg_; }
  const RadialGrid& grid() const { return *grid_; }

  /// G_{mu,T}(g) = 1 / (1 + exp(beta (k^2/2 - (W g)(k) - mu))).
  Eigen::VectorXd hammerstein_apply(const Eigen::VectorXd& g, double mu, double T) const;

  /// Monotone iteration from g = 0 (minimal) or g = 1 (maximal). A warm start
  /// must be a sub-solution (minimal) or super-solution (maximal), e.g. the
  /// same branch at a lower (resp. higher) mu.
  FixedPointResult solve_extremal(double mu, double T, Branch branch,
                                  const Eigen::VectorXd* warm_start = nullptr,
                                  const IterateObserver& observer = {}) const;

  /// Intermediate fixed point between two distinct extremal solutions by the
  /// string method followed by Newton polishing at fixed mu.
  FixedPointResult solve_middle(const FixedPointResult& gmin,
                                const FixedPointResult& gmax) const;

  /// Finds mu such that the branch solution has density rho. Minimal and
  /// maximal branches bracket mu; the middle branch is reached by density
  /// continuation from the nearest fold. Throws BracketError when the branch
  /// does not reach rho.
  FixedPointResult solve_at_density(double rho, double T, Branch branch) const;

  /// Newton solve of g = G_{mu,T}(g) with density(g) = rho, mu free, from an
  /// initial guess. Throws ConvergenceError if Newton fails.
  FixedPointResult newton_at_density(const Eigen::VectorXd& g0, double mu0, double rho,
                                     double T, Branch label) const;

  /// Newton solve of g = G_{mu,T}(g) at fixed mu.
  FixedPointResult newton_at_mu(const Eigen::VectorXd& g0, double mu, double T,
                                Branch label) const;

  double free_energy(const Eigen::VectorXd& g, double T) const;
  double contraction_norm(const FixedPointResult& r) const;
  double residual(const Eigen::VectorXd& g, double mu, double T) const;

  /// True if g is strictly decreasing in k up to the configured slack.
  bool radially_decreasing(const Eigen::VectorXd& g) const;

 private:
  FixedPointResult finish(Eigen::VectorXd g, double mu, double T, Branch b, int iters) const;

  RieszPotential pot_;
  SolverConfig cfg_;
  std::shared_ptr<const RadialGrid> grid_;
};

/// S(t) = -t log t - (1 - t) log(1 - t), zero at the endpoints.
double fermi_entropy(double t);

/// Sum_i C_i rho^(s_i/d), C_i = kappa_i |S^(d-1)| / s_i c_TF^(s_i/2).
double exchange_bound(const RieszPotential& pot, double rho);

struct UniquenessConstants {
  double C = 1.0;
  double rho_C = 1.0;
  double alpha = 1.0;
};

enum class UniquenessRegion { inside_Omega1, inside_Omega2, outside };

const char* to_string(UniquenessRegion r);

/// Predicates for the high-temperature and large-density uniqueness regions.
/// For a single Coulomb-type term (s = 1) the critical forms are used.
UniquenessRegion uniqueness_region(const RieszPotential& pot, double rho, double T,
                                   const UniquenessConstants& constants = {});

/// Free-gas density I_beta(mu) = (2 pi)^-3 integral dk / (1 + e^{beta(k^2/2 - mu)}).
double free_gas_density(double mu, double T);
/// Inverse of free_gas_density by bisection.
double free_gas_mu(double rho, double T);

/// Text dump: header with mu, T, rho, branch, residual; then k, g, V per line.
void write_dump(std::ostream& os, const NoSpinSolver& solver, const FixedPointResult& r);

}  // namespace hfgas
