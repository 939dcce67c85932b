#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hfgas/kernels.hpp"
#include "hfgas/quadrature.hpp"

using namespace hfgas;
using std::numbers::pi;

TEST_SUITE("kernels") {

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  const QuadratureRule r = map_rule(gauss_legendre(8), 0.0, 2.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], 15);
  CHECK(sum == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-14));
}

TEST_CASE("composite rule reaches the requested tolerance") {
  double achieved = 0.0;
  const double v = integrate_composite([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-14,
                                       20, 4096, &achieved);
  CHECK(v == doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-14));
  CHECK(achieved < 1e-13);
}

TEST_CASE("graded rule handles a logarithmic endpoint singularity") {
  const GradedRule g = graded_offsets(1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.offsets.size(); ++i) sum += g.weights[i] * std::log(g.offsets[i]);
  CHECK(sum == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("geometric constants in three dimensions") {
  CHECK(surface_area(3) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(ball_volume(3) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
  CHECK(thomas_fermi_constant(3) == doctest::Approx(std::pow(6 * pi * pi, 2.0 / 3)).epsilon(1e-14));
  CHECK(kinetic_coefficient(3) ==
        doctest::Approx(0.3 * std::pow(6 * pi * pi, 2.0 / 3)).epsilon(1e-14));
}

TEST_CASE("coulomb normalization and exchange constant") {
  CHECK(riesz_normalization(3, 1.0) == doctest::Approx(1.0 / (2 * pi * pi)).epsilon(1e-14));
  CHECK(dirac_constant(3, 1.0) == doctest::Approx(4 * pi * pi).epsilon(1e-12));
  CHECK(exchange_coefficient(3, 1.0) ==
        doctest::Approx(0.75 * std::cbrt(6.0 / pi)).epsilon(1e-12));
  const RieszPotential c = RieszPotential::coulomb();
  CHECK(c(2.0) == doctest::Approx(1.0 / (8 * pi * pi)).epsilon(1e-15));
}

TEST_CASE("dirac constant stays finite near the ends of the exponent range") {
  for (double s : {1e-6, 0.2, 1.5, 2.5, 2.8, 3.0 - 1e-6}) {
    const double c = dirac_constant(3, s);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
  }
}

TEST_CASE("angular kernel closed form agrees with direct quadrature") {
  const RieszPotential c = RieszPotential::coulomb();
  CHECK(angular_kernel(c, 1.0, 2.0) == doctest::Approx(std::log(3.0) / (2 * pi)).epsilon(1e-13));
  const RieszPotential r = RieszPotential::riesz(3, 2.5);
  for (auto [k, kp] : {std::pair{0.3, 0.7}, {1.0, 1.0001}, {2.0, 0.1}}) {
    CHECK(angular_kernel(r, k, kp) ==
          doctest::Approx(angular_kernel_quadrature(r, k, kp)).epsilon(1e-10));
  }
}

TEST_CASE("potential validation") {
  RieszPotential p;
  p.dimension = 3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.terms = {{1.0, 3.0}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.terms = {{-1.0, 1.0}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}
