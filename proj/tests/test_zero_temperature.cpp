#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hfgas/zero_temperature.hpp"

using namespace hfgas;
using std::numbers::pi;

TEST_SUITE("zero_temperature") {

TEST_CASE("f_lambda thresholds") {
  const FLambda first{4.0 / 3.0, 5.0 / 3.0};
  const double lc = (1 - std::pow(2.0, -2.0 / 3)) / (1 - std::pow(2.0, -1.0 / 3));
  CHECK(first.first_order());
  CHECK(first.lambda_critical() == doctest::Approx(lc).epsilon(1e-15));
  CHECK(first.minimizer(0.99 * lc) == 0.5);
  CHECK(first.minimizer(1.01 * lc) == 0.0);

  const FLambda smooth{4.0 / 3.0, 7.0 / 6.0};
  CHECK_FALSE(smooth.first_order());
  CHECK(smooth.minimizer(0.5 * smooth.lambda_min()) == 0.5);
  CHECK(smooth.minimizer(2.0 * smooth.lambda_max()) == 0.0);
  const double mid = 0.5 * (smooth.lambda_min() + smooth.lambda_max());
  const double x = smooth.minimizer(mid);
  CHECK(x > 0.0);
  CHECK(x < 0.5);
  CHECK(smooth.lambda_of_x(x) == doctest::Approx(mid).epsilon(1e-10));
}

TEST_CASE("coulomb critical density has the closed form") {
  const TransitionReport rep = classify_transition(RieszPotential::coulomb());
  REQUIRE(rep.critical_densities.size() == 1);
  const double closed = 125.0 / (24 * std::pow(pi, 5)) / std::pow(1 + std::cbrt(2.0), 3);
  CHECK(rep.kind == TransitionKind::first_order);
  CHECK(rep.critical_densities[0].rho == doctest::Approx(closed).epsilon(1e-12));
  CHECK(rep.polarization_at(0.5 * closed) == 0.0);
  CHECK(rep.polarization_at(2.0 * closed) == 0.5);
}

TEST_CASE("s = 5/2 gives a smooth transition between two densities") {
  const TransitionReport rep = classify_transition(RieszPotential::riesz(3, 2.5));
  CHECK(rep.kind == TransitionKind::second_order);
  REQUIRE(rep.critical_densities.size() == 2);
  CHECK(rep.critical_densities[0].rho < rep.critical_densities[1].rho);
  CHECK(rep.critical_densities[0].rho == doctest::Approx(0.0073434).epsilon(1e-4));
  CHECK(rep.critical_densities[1].rho == doctest::Approx(0.0140064).epsilon(1e-4));
}

TEST_CASE("no-spin energy and chemical potential") {
  const RieszPotential c = RieszPotential::coulomb();
  const double rho = 1e-3;
  const double k = 0.3 * std::pow(6 * pi * pi, 2.0 / 3);
  const double l = 0.75 * std::cbrt(6 / pi);
  CHECK(nospin_energy_T0(c, rho) ==
        doctest::Approx(k * std::pow(rho, 5.0 / 3) - l * std::pow(rho, 4.0 / 3)).epsilon(1e-12));
  const double h = 1e-7;
  const double fd = (nospin_energy_T0(c, rho + h) - nospin_energy_T0(c, rho - h)) / (2 * h);
  CHECK(mu_T0(c, rho) == doctest::Approx(fd).epsilon(1e-7));
  CHECK(polarization_energy(c, rho, 0.5) ==
        doctest::Approx(2 * nospin_energy_T0(c, rho / 2)).epsilon(1e-14));
  CHECK(polarization_energy(c, rho, 0.0) == doctest::Approx(nospin_energy_T0(c, rho)).epsilon(1e-14));
}

TEST_CASE("polarization minimum at the critical density is a coexistence") {
  const RieszPotential c = RieszPotential::coulomb();
  const ZeroTemperatureModel m(c);
  const double rc = classify_transition(c).critical_densities[0].rho;
  const PolarizationArgmin a = minimize_polarization(m, rc);
  CHECK(a.tag == PhaseTag::coexistence);
  CHECK(minimize_polarization(m, 0.9 * rc).t == 0.0);
  CHECK(minimize_polarization(m, 1.1 * rc).t == 0.5);
}

TEST_CASE("coulomb scan has exactly one jump") {
  const RieszPotential c = RieszPotential::coulomb();
  std::vector<double> grid;
  for (int i = 0; i < 60; ++i) grid.push_back(1e-4 * std::pow(40.0, i / 59.0));
  const auto scan = scan_polarization(c, grid, 2);
  const auto events = detect_transitions(ZeroTemperatureModel(c), scan);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == TransitionKind::first_order);
  CHECK(events[0].rho == doctest::Approx(1.4745843e-3).epsilon(1e-7));
}

TEST_CASE("multi-term potentials are not classified") {
  const auto p = RieszPotential::from_reduced_exchange(3, {{0.5, 0.2}, {1.0, 2.8}});
  CHECK_THROWS_AS(classify_transition(p), std::invalid_argument);
}

}
