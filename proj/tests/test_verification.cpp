#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hfgas/property_suites.hpp"
#include "hfgas/verification.hpp"
#include "hfgas/zero_temperature.hpp"

using namespace hfgas;

TEST_SUITE("verification") {

TEST_CASE("rearrangement gap equality cases") {
  const SpinMatrix D1 = SpinMatrix::diag(0.9, 0.2);
  const SpinMatrix D2 = SpinMatrix::diag(0.7, 0.1);
  const SpinMatrix I = SpinMatrix::classify(Eigen::Matrix2cd::Identity());
  CHECK(rearrangement_gap(D1, D2, I) == 0.0);
  std::mt19937_64 rng(7);
  CHECK(std::abs(rearrangement_gap(SpinMatrix::diag(1, 1), D2, haar_su2(rng))) < 1e-15);
}

TEST_CASE("swap matrix gives the full closed-form gap") {
  Eigen::Matrix2cd swap;
  swap << 0, 1, -1, 0;
  const SpinMatrix U = SpinMatrix::classify(swap);
  const SpinMatrix D1 = SpinMatrix::diag(0.9, 0.2);
  const SpinMatrix D2 = SpinMatrix::diag(0.7, 0.1);
  CHECK(rearrangement_gap(D1, D2, U) == doctest::Approx(0.7 * 0.6).epsilon(1e-14));
  CHECK(rearrangement_gap_closed_form(D1, D2, U) == doctest::Approx(0.42).epsilon(1e-14));
}

TEST_CASE("unordered or non-diagonal inputs are rejected") {
  const SpinMatrix I = SpinMatrix::classify(Eigen::Matrix2cd::Identity());
  CHECK_THROWS_AS(rearrangement_gap(SpinMatrix::diag(0.1, 0.5), SpinMatrix::diag(1, 0), I),
                  std::invalid_argument);
  Eigen::Matrix2cd m;
  m << 1, 0.5, 0.5, 0;
  CHECK_THROWS_AS(rearrangement_gap(SpinMatrix::classify(m), SpinMatrix::diag(1, 0), I),
                  std::invalid_argument);
  Eigen::Matrix2cd notu;
  notu << 2, 0, 0, 1;
  CHECK_THROWS_AS(rearrangement_gap(SpinMatrix::diag(1, 0), SpinMatrix::diag(1, 0),
                                    SpinMatrix::classify(notu)),
                  std::invalid_argument);
}

TEST_CASE("haar samples are special unitary") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const SpinMatrix u = haar_su2(rng);
    CHECK(u.unitary);
    CHECK(std::abs(u.m.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("f_lambda minimizer examples") {
  const double p = 4.0 / 3, q = 5.0 / 3;
  const double lc = FLambda{p, q}.lambda_critical();
  CHECK(flambda_minimizer(p, q, 0.99 * lc) == 0.5);
  CHECK(flambda_minimizer(p, q, 1.01 * lc) == 0.0);
  const FLambda s{4.0 / 3, 7.0 / 6};
  CHECK(flambda_minimizer(s.p, s.q, 0.5 * s.lambda_min()) == 0.5);
  double prev = 0.5;
  for (int i = 1; i <= 20; ++i) {
    const double lambda = s.lambda_min() + (s.lambda_max() - s.lambda_min()) * i / 21.0;
    const double x = flambda_minimizer(s.p, s.q, lambda);
    CHECK(x > 0.0);
    CHECK(x < 0.5);
    CHECK(x <= prev);
    CHECK(x == doctest::Approx(s.minimizer(lambda)).epsilon(1e-6));
    prev = x;
  }
  CHECK_THROWS_AS(flambda_minimizer(2.5, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(flambda_minimizer(1.5, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("f_lambda agrees with the density classification") {
  const TransitionReport rep = classify_transition(RieszPotential::riesz(3, 2.5));
  const double lo = rep.critical_densities[0].rho;
  const double hi = rep.critical_densities[1].rho;
  for (double rho : {0.5 * lo, lo + 0.3 * (hi - lo), lo + 0.7 * (hi - lo), 2 * hi}) {
    const double x = flambda_minimizer(rep.shape.p, rep.shape.q, rep.reduced_lambda(rho));
    CHECK(x == doctest::Approx(rep.polarization_at(rho)).epsilon(1e-6));
  }
}

TEST_CASE("seeded suites repeat their samples") {
  SuiteOptions opt;
  opt.quick = true;
  opt.seed = 99;
  const SuiteReport a = run_rearrangement_suite(opt);
  const SuiteReport b = run_rearrangement_suite(opt);
  CHECK(a.sample_digest == b.sample_digest);
  opt.seed = 100;
  CHECK(run_rearrangement_suite(opt).sample_digest != a.sample_digest);
  CHECK(a.all_passed());
  CHECK(run_entropy_suite().all_passed());
  CHECK(run_flambda_suite(opt).all_passed());
}

}
