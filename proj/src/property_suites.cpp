#include "hfgas/property_suites.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "hfgas/radial_solver.hpp"
#include "hfgas/verification.hpp"
#include "hfgas/zero_temperature.hpp"

namespace hfgas {

namespace {

struct Digest {
  std::uint64_t h = 14695981039346656037ULL;
  void add(double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
};

std::string describe(const std::string& what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << value;
  return os.str();
}

void append(SuiteReport& into, const SuiteReport& from) {
  into.results.insert(into.results.end(), from.results.begin(), from.results.end());
  into.sample_digest = (into.sample_digest ^ from.sample_digest) * 1099511628211ULL;
}

}  // namespace

bool SuiteReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

SuiteReport run_rearrangement_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Digest digest;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = opt.quick ? 1000 : opt.haar_samples;

  bool nonneg = true;
  bool closed = true;
  std::string nonneg_detail = std::to_string(n) + " samples";
  std::string closed_detail = nonneg_detail;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double a[4];
    for (double& x : a) {
      x = unit(rng);
      digest.add(x);
    }
    const SpinMatrix D1 = SpinMatrix::diag(std::max(a[0], a[1]), std::min(a[0], a[1]));
    const SpinMatrix D2 = SpinMatrix::diag(std::max(a[2], a[3]), std::min(a[2], a[3]));
    const SpinMatrix U = haar_su2(rng);
    digest.add(U.m(0, 0).real());
    digest.add(U.m(0, 1).imag());
    const double gap = rearrangement_gap(D1, D2, U);
    const double ref = rearrangement_gap_closed_form(D1, D2, U);
    if (gap < -1e-14 && nonneg) {
      nonneg = false;
      nonneg_detail = describe("sample " + std::to_string(i) + ": gap = ", gap);
    }
    worst = std::max(worst, std::abs(gap - ref));
    if (std::abs(gap - ref) > 1e-12 && closed) {
      closed = false;
      closed_detail = describe("sample " + std::to_string(i) + ": |gap - closed form| = ",
                               std::abs(gap - ref));
    }
  }
  if (closed) closed_detail += describe(", max deviation ", worst);
  rep.results.push_back({"rearrangement.nonnegative", nonneg, nonneg_detail});
  rep.results.push_back({"rearrangement.closed_form", closed, closed_detail});

  // Equality cases: U = identity, and D1 a multiple of the identity.
  bool equal = true;
  std::string equal_detail = "identity U and scalar D1";
  for (int i = 0; i < 100; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    digest.add(x);
    digest.add(y);
    const SpinMatrix D = SpinMatrix::diag(std::max(x, y), std::min(x, y));
    const SpinMatrix I = SpinMatrix::classify(Eigen::Matrix2cd::Identity());
    const double g1 = rearrangement_gap(D, D, I);
    const double g2 = rearrangement_gap(SpinMatrix::diag(x, x), D, haar_su2(rng));
    if (g1 != 0.0 || std::abs(g2) > 1e-15) {
      equal = false;
      equal_detail = describe("sample " + std::to_string(i) + ": gap = ", g1 != 0.0 ? g1 : g2);
      break;
    }
  }
  rep.results.push_back({"rearrangement.equality_cases", equal, equal_detail});

  bool rejected = false;
  try {
    rearrangement_gap(SpinMatrix::diag(0.2, 0.8), SpinMatrix::diag(0.9, 0.1),
                      SpinMatrix::classify(Eigen::Matrix2cd::Identity()));
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  rep.results.push_back({"rearrangement.rejects_unordered", rejected, "diag(0.2, 0.8)"});
  rep.sample_digest = digest.h;
  return rep;
}

SuiteReport run_flambda_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Digest digest;
  std::mt19937_64 rng(opt.seed ^ 0x5bd1e995ULL);
  const int n = opt.quick ? 10 : opt.flambda_samples;
  struct Regime {
    const char* name;
    FLambda f;
  };
  const Regime regimes[] = {{"flambda.first_order", {4.0 / 3.0, 5.0 / 3.0}},
                            {"flambda.smooth", {4.0 / 3.0, 7.0 / 6.0}}};
  for (const auto& [name, f] : regimes) {
    const double lo = f.first_order() ? 0.5 * f.lambda_critical() : 0.5 * f.lambda_min();
    const double hi = f.first_order() ? 1.5 * f.lambda_critical() : 1.5 * f.lambda_max();
    std::uniform_real_distribution<double> dist(lo, hi);
    bool ok = true;
    std::string detail = std::to_string(n) + " samples";
    for (int i = 0; i < n && ok; ++i) {
      const double lambda = dist(rng);
      digest.add(lambda);
      const double scan = flambda_minimizer(f.p, f.q, lambda);
      const double predicted = f.minimizer(lambda);
      const bool endpoint = predicted == 0.0 || predicted == 0.5;
      if (endpoint ? scan != predicted : std::abs(scan - predicted) > 1e-6) {
        ok = false;
        std::ostringstream os;
        os.precision(17);
        os << "lambda = " << lambda << ": scan " << scan << " vs classification " << predicted;
        detail = os.str();
      }
    }
    rep.results.push_back({name, ok, detail});
  }
  rep.sample_digest = digest.h;
  return rep;
}

SuiteReport run_entropy_suite() {
  SuiteReport rep;
  const bool values = std::abs(fermi_entropy(0.5) - std::numbers::ln2) <= 1e-15 &&
                      fermi_entropy(0.0) == 0.0 && fermi_entropy(1.0) == 0.0;
  rep.results.push_back({"entropy.values", values, "S(1/2) = log 2, S(0) = S(1) = 0"});
  const int n = 1000;
  bool concave = true;
  std::string detail = std::to_string(n) + "-point grid";
  for (int i = 1; i < n; ++i) {
    const double h = 1.0 / n;
    const double second =
        fermi_entropy((i - 1) * h) - 2.0 * fermi_entropy(i * h) + fermi_entropy((i + 1) * h);
    if (second > 0.0) {
      concave = false;
      detail = describe("second difference positive at t = ", i * h);
      break;
    }
  }
  rep.results.push_back({"entropy.concave", concave, detail});
  return rep;
}

SuiteReport run_solver_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  struct Case {
    double mu;
    double T;
  };
  std::vector<Case> cases{{-0.04, 0.01}, {-0.05, 0.03}, {-0.02, 0.05}};
  if (opt.quick) cases.resize(1);
  const RieszPotential pot = RieszPotential::coulomb();
  SolverConfig cfg;
  cfg.grid = GridSpec::for_problem(1.6e-3, 0.05, opt.quick ? 256 : 512);
  const NoSpinSolver solver(pot, cfg);

  struct Check {
    const char* name;
    bool ok = true;
    std::string detail;
    void fail(const std::string& what) {
      if (ok) detail = what;
      ok = false;
    }
  };
  Check monotone{"solver.monotone", true, ""};
  Check sandwich{"solver.sandwich", true, ""};
  Check residual{"solver.residual", true, ""};
  Check decreasing{"solver.radially_decreasing", true, ""};
  Check bound{"solver.exchange_bound", true, ""};
  int iterates = 0;
  for (const auto& c : cases) {
    std::ostringstream where;
    where << "(mu=" << c.mu << ", T=" << c.T << ")";
    try {
      const FixedPointResult gmax = solver.solve_extremal(c.mu, c.T, Branch::maximal);
      const FixedPointResult gmin = solver.solve_extremal(
          c.mu, c.T, Branch::minimal, nullptr, [&](int it, const Eigen::VectorXd& g) {
            ++iterates;
            if ((g - gmax.g).maxCoeff() > 1e-12) {
              sandwich.fail(where.str() + ": minimal iterate " + std::to_string(it) +
                            " exceeds the maximal solution");
            }
          });
      solver.solve_extremal(c.mu, c.T, Branch::maximal, nullptr,
                            [&](int it, const Eigen::VectorXd& g) {
                              ++iterates;
                              if ((gmin.g - g).maxCoeff() > 1e-12) {
                                sandwich.fail(where.str() + ": maximal iterate " +
                                              std::to_string(it) +
                                              " falls below the minimal solution");
                              }
                            });
      std::vector<FixedPointResult> sols{gmin, gmax};
      if ((gmax.g - gmin.g).maxCoeff() > 1e-6) {
        const FixedPointResult mid = solver.solve_middle(gmin, gmax);
        if (mid.status == MiddleStatus::found) {
          if ((gmin.g - mid.g).maxCoeff() > 1e-8 || (mid.g - gmax.g).maxCoeff() > 1e-8) {
            sandwich.fail(where.str() + ": middle solution not between the extremal ones");
          }
          sols.push_back(mid);
        }
      }
      for (const auto& s : sols) {
        if (s.residual > 1e-8) {
          residual.fail(where.str() + describe(": residual ", s.residual));
        }
        if (!solver.radially_decreasing(s.g)) {
          decreasing.fail(where.str() + ": " + to_string(s.branch) + " solution");
        }
        const double limit = exchange_bound(pot, s.density) * (1.0 + 1e-6);
        if (s.V.maxCoeff() > limit) {
          bound.fail(where.str() + describe(": max V exceeds bound by ", s.V.maxCoeff() - limit));
        }
      }
    } catch (const MonotonicityError& e) {
      monotone.fail(e.what());
    } catch (const std::exception& e) {
      residual.fail(where.str() + ": " + e.what());
    }
  }
  const std::string summary =
      std::to_string(cases.size()) + " cases, " + std::to_string(iterates) + " iterates";
  for (Check* c : {&monotone, &sandwich, &residual, &decreasing, &bound}) {
    rep.results.push_back({c->name, c->ok, c->ok ? summary : c->detail});
  }
  return rep;
}

SuiteReport run_all_suites(const SuiteOptions& opt) {
  SuiteReport rep;
  append(rep, run_rearrangement_suite(opt));
  append(rep, run_flambda_suite(opt));
  append(rep, run_entropy_suite());
  append(rep, run_solver_suite(opt));
  return rep;
}

}  // namespace hfgas
