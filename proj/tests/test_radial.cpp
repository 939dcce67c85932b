#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hfgas/quadrature.hpp"
#include "hfgas/radial_grid.hpp"
#include "hfgas/radial_solver.hpp"

using namespace hfgas;
using std::numbers::pi;

namespace {

SolverConfig default_config(int nodes = 512) {
  SolverConfig cfg;
  cfg.grid = GridSpec::for_problem(1.6e-3, 0.035, nodes);
  return cfg;
}

// Coulomb convolution of exp(-k^2): 2 pi^(3/2) D(k) / k / (2 pi^2), with the
// Dawson integral D evaluated by plain quadrature.
double gaussian_convolution(double k) {
  const double inner =
      integrate_composite([k](double v) { return std::exp(k * k * (v * v - 1.0)); }, 0.0, 1.0,
                          1e-15);
  return 2 * std::pow(pi, 1.5) * inner / (2 * pi * pi);
}

}  // namespace

TEST_SUITE("radial_grid") {

TEST_CASE("weights integrate k^2 over the cutoff ball") {
  const RadialGrid grid(RieszPotential::coulomb(), default_config().grid);
  CHECK(grid.weights().sum() == doctest::Approx(std::pow(grid.k_max(), 3) / 3).epsilon(1e-13));
}

TEST_CASE("coulomb convolution of a gaussian") {
  const RadialGrid grid(RieszPotential::coulomb(), default_config().grid);
  const Eigen::VectorXd g = (-grid.nodes().array().square()).exp().matrix();
  const Eigen::VectorXd V = grid.convolve(g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double k = grid.nodes()[i];
    if (k > 3.0) break;
    worst = std::max(worst, std::abs(V[i] / gaussian_convolution(k) - 1.0));
  }
  CHECK(worst < 1e-7);
}

}

TEST_SUITE("radial_solver") {

TEST_CASE("fermi factor and entropy") {
  CHECK(fermi_factor(0.0) == 0.5);
  CHECK(fermi_factor(-1e4) == doctest::Approx(1.0));
  CHECK(fermi_factor(1e4) > 0.0);
  CHECK(fermi_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(fermi_entropy(0.0) == 0.0);
  CHECK_THROWS_AS(fermi_entropy(1.5), std::invalid_argument);
}

TEST_CASE("vanishing coupling reproduces the free gas") {
  const RieszPotential weak = RieszPotential::riesz(3, 1.0, 1e-14);
  const NoSpinSolver solver(weak, default_config());
  for (double mu : {-0.02, 0.01, 0.05}) {
    const FixedPointResult r = solver.solve_extremal(mu, 0.02, Branch::minimal);
    CHECK(r.density == doctest::Approx(free_gas_density(mu, 0.02)).epsilon(1e-9));
  }
  CHECK(free_gas_mu(free_gas_density(0.01, 0.02), 0.02) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("extremal solutions are ordered and converged") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config());
  const FixedPointResult lo = solver.solve_extremal(-0.04, 0.01, Branch::minimal);
  const FixedPointResult hi = solver.solve_extremal(-0.04, 0.01, Branch::maximal);
  CHECK(lo.residual <= 1e-10);
  CHECK(hi.residual <= 1e-10);
  CHECK((lo.g - hi.g).maxCoeff() <= 1e-12);
  CHECK(hi.density > 1.05 * lo.density);
  CHECK(solver.radially_decreasing(lo.g));
  CHECK(solver.radially_decreasing(hi.g));
  CHECK(lo.monotone_excess <= 1e-12);

  const FixedPointResult mid = solver.solve_middle(lo, hi);
  REQUIRE(mid.status == MiddleStatus::found);
  CHECK(mid.residual <= 1e-8);
  CHECK(mid.density > lo.density);
  CHECK(mid.density < hi.density);
  CHECK(mid.free_energy == doctest::Approx(solver.free_energy(mid.g, 0.01)));
}

TEST_CASE("unique regime has a single solution") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config());
  const FixedPointResult lo = solver.solve_extremal(-0.02, 0.05, Branch::minimal);
  const FixedPointResult hi = solver.solve_extremal(-0.02, 0.05, Branch::maximal);
  CHECK((hi.g - lo.g).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(solver.contraction_norm(lo) > 0.0);
}

TEST_CASE("density solve round trip and newton agreement") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config());
  const FixedPointResult r = solver.solve_at_density(1e-3, 0.05, Branch::minimal);
  CHECK(r.density == doctest::Approx(1e-3).epsilon(1e-8));
  const FixedPointResult n = solver.newton_at_mu(r.g, r.mu, 0.05, Branch::minimal);
  CHECK((n.g - r.g).cwiseAbs().maxCoeff() < 1e-8);
  const FixedPointResult d = solver.newton_at_density(r.g, r.mu + 1e-4, 1.01e-3, 0.05,
                                                      Branch::minimal);
  CHECK(d.density == doctest::Approx(1.01e-3).epsilon(1e-9));
  CHECK(d.mu > r.mu);
}

TEST_CASE("minimal branch reports a jump past its fold") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config());
  CHECK_THROWS_AS(solver.solve_at_density(3e-4, 0.01, Branch::minimal), BracketError);
  const FixedPointResult m = solver.solve_at_density(3e-4, 0.01, Branch::middle);
  CHECK(m.density == doctest::Approx(3e-4).epsilon(1e-8));
  CHECK(m.residual <= 1e-10);
}

TEST_CASE("doubling the node count leaves the free energy unchanged") {
  const NoSpinSolver coarse(RieszPotential::coulomb(), default_config(512));
  const NoSpinSolver fine(RieszPotential::coulomb(), default_config(1024));
  const double a = coarse.solve_at_density(1e-3, 0.03, Branch::maximal).free_energy;
  const double b = fine.solve_at_density(1e-3, 0.03, Branch::maximal).free_energy;
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("exchange bound and uniqueness regions") {
  const RieszPotential c = RieszPotential::coulomb();
  const double c_tf = std::pow(6 * pi * pi, 2.0 / 3);
  const double C = 1.0 / (2 * pi * pi) * 4 * pi * std::sqrt(c_tf);
  CHECK(exchange_bound(c, 1e-3) == doctest::Approx(C * std::cbrt(1e-3)).epsilon(1e-14));
  CHECK(uniqueness_region(c, 1e-3, 10.0) == UniquenessRegion::inside_Omega1);
  CHECK(uniqueness_region(c, 1e-3, 0.01) != UniquenessRegion::inside_Omega1);
}

TEST_CASE("dump lists one node per line") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config(256));
  const FixedPointResult r = solver.solve_extremal(-0.03, 0.05, Branch::minimal);
  std::ostringstream os;
  write_dump(os, solver, r);
  std::istringstream in(os.str());
  std::string line;
  int comments = 0, rows = 0;
  while (std::getline(in, line)) (line[0] == '#' ? comments : rows)++;
  CHECK(comments == 6);
  CHECK(rows == solver.grid().size());
  CHECK(os.str().find("# branch = minimal") != std::string::npos);
}

TEST_CASE("invalid solver inputs") {
  const NoSpinSolver solver(RieszPotential::coulomb(), default_config(256));
  CHECK_THROWS_AS(solver.solve_extremal(0.0, 0.0, Branch::minimal), std::invalid_argument);
  CHECK_THROWS_AS(solver.solve_extremal(0.0, 0.1, Branch::middle), std::invalid_argument);
  CHECK_THROWS_AS(solver.solve_at_density(-1.0, 0.1, Branch::minimal), std::invalid_argument);
  SolverConfig bad = default_config(256);
  bad.tolerance = -1.0;
  CHECK_THROWS(bad.validate());
}

}
