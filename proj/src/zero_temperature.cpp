#include "hfgas/zero_temperature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hfgas/optimize.hpp"

namespace hfgas {

namespace {

constexpr int kScanIntervals = 2000;
constexpr double kScanTol = 1e-6;

// x^a - (1-x)^a for x in [0, 1/2], accurate when x is close to 1/2.
double power_gap(double x, double a) {
  if (x == 0.0) return -1.0;
  const double log_ratio = std::log(x / (1.0 - x));
  return std::pow(1.0 - x, a) * std::expm1(a * log_ratio);
}

}  // namespace

FLambda FLambda::from_riesz(int d, double s) {
  if (d < 1 || !(s > 0.0 && s < d)) {
    throw std::invalid_argument("FLambda: need d >= 1 and 0 < s < d");
  }
  return FLambda{(d + s) / d, (d + 2.0) / d};
}

double FLambda::operator()(double lambda, double x) const {
  return std::pow(x, q) + std::pow(1.0 - x, q) -
         lambda * (std::pow(x, p) + std::pow(1.0 - x, p));
}

double FLambda::lambda_critical() const {
  return (1.0 - std::pow(2.0, 1.0 - q)) / (1.0 - std::pow(2.0, 1.0 - p));
}

double FLambda::lambda_min() const {
  return q * (q - 1.0) / (p * (p - 1.0)) * std::pow(2.0, p - q);
}

double FLambda::lambda_max() const { return q / p; }

double FLambda::lambda_of_x(double x) const {
  if (x >= 0.5) return lambda_min();
  return q / p * power_gap(x, q - 1.0) / power_gap(x, p - 1.0);
}

double FLambda::minimizer(double lambda) const {
  if (first_order()) {
    return lambda > lambda_critical() ? 0.0 : 0.5;
  }
  if (lambda <= lambda_min()) return 0.5;
  if (lambda >= lambda_max()) return 0.0;
  // lambda_of_x decreases from q/p at 0 to lambda_min at 1/2.
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_of_x(mid) > lambda) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ZeroTemperatureModel::ZeroTemperatureModel(const RieszPotential& pot)
    : dimension_(pot.dimension), constants_(energy_coefficients(pot)) {
  for (const auto& t : pot.terms) exponents_.push_back(t.s);
}

double ZeroTemperatureModel::energy(double rho) const {
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("energy: density must be >= 0");
  }
  if (rho == 0.0) return 0.0;
  const double d = dimension_;
  double e = constants_.kappa_d * std::pow(rho, 1.0 + 2.0 / d);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    e -= constants_.lambda[i] * std::pow(rho, 1.0 + exponents_[i] / d);
  }
  return e;
}

double ZeroTemperatureModel::chemical_potential(double rho) const {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("chemical_potential: density must be > 0");
  }
  const double d = dimension_;
  double mu = (1.0 + 2.0 / d) * constants_.kappa_d * std::pow(rho, 2.0 / d);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const double s = exponents_[i];
    mu -= (1.0 + s / d) * constants_.lambda[i] * std::pow(rho, s / d);
  }
  return mu;
}

double ZeroTemperatureModel::polarization_energy(double rho, double t) const {
  if (!(t >= 0.0 && t <= 0.5)) {
    throw std::invalid_argument("polarization_energy: t must lie in [0, 1/2]");
  }
  return energy(t * rho) + energy((1.0 - t) * rho);
}

double nospin_energy_T0(const RieszPotential& pot, double rho) {
  return ZeroTemperatureModel(pot).energy(rho);
}

double mu_T0(const RieszPotential& pot, double rho) {
  return ZeroTemperatureModel(pot).chemical_potential(rho);
}

double polarization_energy(const RieszPotential& pot, double rho, double t) {
  return ZeroTemperatureModel(pot).polarization_energy(rho, t);
}

PolarizationCurve polarization_curve(const ZeroTemperatureModel& model, double rho,
                                     int points) {
  if (points < 2) {
    throw std::invalid_argument("polarization_curve: need at least two points");
  }
  PolarizationCurve curve{rho, {}};
  for (int i = 0; i < points; ++i) {
    const double t = 0.5 * i / (points - 1);
    curve.samples.push_back({t, model.polarization_energy(rho, t)});
  }
  return curve;
}

const char* to_string(PhaseTag tag) {
  switch (tag) {
    case PhaseTag::paramagnetic: return "paramagnetic";
    case PhaseTag::ferromagnetic: return "ferromagnetic";
    case PhaseTag::coexistence: return "coexistence";
  }
  return "?";
}

const char* to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::first_order: return "first_order";
    case TransitionKind::second_order: return "second_order";
    case TransitionKind::multiple: return "multiple";
  }
  return "?";
}

PolarizationArgmin minimize_polarization(const ZeroTemperatureModel& model, double rho) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("minimize_polarization: density must be > 0");
  }
  auto f = [&](double t) { return model.polarization_energy(rho, t); };
  const double h = 0.5 / kScanIntervals;
  std::vector<double> values(kScanIntervals + 1);
  for (int i = 0; i <= kScanIntervals; ++i) values[i] = f(i * h);

  std::vector<int> minima;
  for (int i = 0; i <= kScanIntervals; ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i == kScanIntervals || values[i] <= values[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  if (minima.size() > 3) minima.resize(3);

  std::vector<ScalarMinimum> candidates;
  for (int i : minima) {
    const double lo = std::max(0, i - 1) * h;
    const double hi = std::min(kScanIntervals, i + 1) * h;
    ScalarMinimum best = golden_section(f, lo, hi, kScanTol);
    // Boundary minima are kept exact.
    if (i == 0 && values[0] <= best.value) best = {0.0, values[0]};
    if (i == kScanIntervals && values[i] <= best.value) best = {0.5, values[i]};
    candidates.push_back(best);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const ScalarMinimum& a, const ScalarMinimum& b) { return a.value < b.value; });

  const ScalarMinimum& best = candidates.front();
  PolarizationArgmin out{rho, best.x, best.value, PhaseTag::ferromagnetic};
  if (std::abs(best.x - 0.5) <= kScanTol) {
    out.t = 0.5;
    out.tag = PhaseTag::paramagnetic;
  }
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    const bool tie = std::abs(candidates[j].value - best.value) <=
                     1e-12 * std::max(std::abs(best.value), 1e-300);
    if (tie && std::abs(candidates[j].x - best.x) > 10 * kScanTol) {
      out.tag = PhaseTag::coexistence;
      out.t_alt = candidates[j].x;
      break;
    }
  }
  return out;
}

std::vector<PolarizationArgmin> scan_polarization(const RieszPotential& pot,
                                                  const std::vector<double>& rho_grid,
                                                  int workers) {
  if (rho_grid.empty()) {
    throw std::invalid_argument("scan_polarization: empty density grid");
  }
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > 0.0) || (i > 0 && !(rho_grid[i] > rho_grid[i - 1]))) {
      throw std::invalid_argument(
          "scan_polarization: densities must be positive and increasing");
    }
  }
  const ZeroTemperatureModel model(pot);
  std::vector<PolarizationArgmin> out(rho_grid.size());
  const int n_threads =
      std::clamp(workers, 1, static_cast<int>(std::min<std::size_t>(rho_grid.size(), 64)));
  auto work = [&](int id) {
    for (std::size_t i = id; i < rho_grid.size(); i += n_threads) {
      out[i] = minimize_polarization(model, rho_grid[i]);
    }
  };
  if (n_threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < n_threads; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  return out;
}

double TransitionReport::reduced_lambda(double rho) const {
  return exchange_ratio / std::pow(rho, (2.0 - s) / dimension);
}

double TransitionReport::polarization_at(double rho) const {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("polarization_at: density must be > 0");
  }
  return shape.minimizer(reduced_lambda(rho));
}

TransitionReport classify_transition(const RieszPotential& pot) {
  pot.validate();
  if (pot.terms.size() != 1) {
    throw std::invalid_argument(
        "classify_transition: single-term potentials only; use scan_polarization");
  }
  const int d = pot.dimension;
  const double s = pot.terms.front().s;
  const double s_split = std::min(2.0, static_cast<double>(d));
  const bool sharp = s < s_split;
  const bool smooth = d >= 3 && s > s_split;
  if (!sharp && !smooth) {
    throw std::invalid_argument("classify_transition: exponent on a regime boundary");
  }
  const ModelConstants mc = energy_coefficients(pot);
  TransitionReport rep{};
  rep.shape = FLambda::from_riesz(d, s);
  rep.exchange_ratio = mc.lambda.front() / mc.kappa_d;
  rep.dimension = d;
  rep.s = s;

  // lambda(rho) = ratio * rho^((s-2)/d), so lambda = L at rho = (L/ratio)^(d/(s-2)).
  auto density_for = [&](double lambda) {
    return std::pow(lambda / rep.exchange_ratio, d / (s - 2.0));
  };
  double lo = 0.0;
  double hi = 0.0;
  if (sharp) {
    rep.kind = TransitionKind::first_order;
    const double rho_c = density_for(rep.shape.lambda_critical());
    rep.critical_densities.push_back({rho_c, "rho_c"});
    lo = rho_c / 4.0;
    hi = rho_c * 4.0;
  } else {
    rep.kind = TransitionKind::second_order;
    const double rho_min = density_for(rep.shape.lambda_min());
    const double rho_max = density_for(rep.shape.lambda_max());
    rep.critical_densities.push_back({rho_min, "rho_c_min"});
    rep.critical_densities.push_back({rho_max, "rho_c_max"});
    lo = rho_min / 2.0;
    hi = rho_max * 2.0;
  }
  constexpr int samples = 201;
  for (int i = 0; i < samples; ++i) {
    const double rho = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    rep.samples.push_back({rho, rep.polarization_at(rho)});
  }
  return rep;
}

std::vector<TransitionEvent> detect_transitions(const ZeroTemperatureModel& model,
                                                const std::vector<PolarizationArgmin>& scan,
                                                double rtol) {
  constexpr double jump = 0.1;
  constexpr double edge = 1e-5;
  std::vector<TransitionEvent> events;
  auto t_at = [&](double rho) { return minimize_polarization(model, rho).t; };
  // Bisect in rho for the point where `pred(t)` flips.
  auto refine = [&](double a, double b, auto pred) {
    const bool pa = pred(t_at(a));
    while (b - a > rtol * b) {
      const double m = 0.5 * (a + b);
      if (pred(t_at(m)) == pa) {
        a = m;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const double ta = scan[i - 1].t;
    const double tb = scan[i].t;
    const double ra = scan[i - 1].rho;
    const double rb = scan[i].rho;
    if (std::abs(tb - ta) > jump) {
      const double mid_t = 0.5 * (ta + tb);
      const bool rising = tb > ta;
      const double rho = refine(ra, rb, [&](double t) { return rising ? t > mid_t : t < mid_t; });
      events.push_back({rho, TransitionKind::first_order,
                        rising ? "jump_up" : "jump_down", ta, tb});
      continue;
    }
    const bool para_a = ta >= 0.5 - edge;
    const bool para_b = tb >= 0.5 - edge;
    if (para_a != para_b) {
      const double rho = refine(ra, rb, [&](double t) { return t >= 0.5 - edge; });
      events.push_back({rho, TransitionKind::second_order,
                        para_a ? "leave_paramagnetic" : "enter_paramagnetic", ta, tb});
    }
    const bool ferro_a = ta <= edge;
    const bool ferro_b = tb <= edge;
    if (ferro_a != ferro_b) {
      const double rho = refine(ra, rb, [&](double t) { return t <= edge; });
      events.push_back({rho, TransitionKind::second_order,
                        ferro_a ? "leave_ferromagnetic" : "enter_ferromagnetic", ta, tb});
    }
  }
  return events;
}

}  // namespace hfgas
