#include "hfgas/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hfgas/quadrature.hpp"
#include "hfgas/zero_temperature.hpp"

namespace hfgas {

namespace {

constexpr double kLowClamp = 1e-300;
constexpr double kHighClamp = 1.0 - 1e-16;

double sup_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// beta G (1 - G), with values far below round-off flushed to zero so the
// Jacobian stays free of subnormals.
Eigen::VectorXd jacobian_diagonal(const Eigen::VectorXd& G, double T) {
  Eigen::VectorXd D = (G.array() * (1.0 - G.array()) / T).matrix();
  for (Eigen::Index i = 0; i < D.size(); ++i) {
    if (D[i] < 1e-200) D[i] = 0.0;
  }
  return D;
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::minimal: return "minimal";
    case Branch::maximal: return "maximal";
    case Branch::middle: return "middle";
  }
  return "?";
}

const char* short_name(Branch b) {
  switch (b) {
    case Branch::minimal: return "min";
    case Branch::maximal: return "max";
    case Branch::middle: return "middle";
  }
  return "?";
}

const char* to_string(UniquenessRegion r) {
  switch (r) {
    case UniquenessRegion::inside_Omega1: return "inside_Omega1";
    case UniquenessRegion::inside_Omega2: return "inside_Omega2";
    case UniquenessRegion::outside: return "outside";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
  if (beads < 8) throw std::invalid_argument("bead count must be >= 8");
  if (max_iterations < 1 || string_iterations < 1 || reparam_every < 1) {
    throw std::invalid_argument("iteration limits must be positive");
  }
  if (!(density_rtol > 0.0)) throw std::invalid_argument("density_rtol must be > 0");
}

double fermi_factor(double x) {
  return std::clamp(0.5 * (1.0 - std::tanh(0.5 * x)), kLowClamp, kHighClamp);
}

double fermi_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("fermi_entropy: t must lie in [0, 1]");
  }
  auto xlogx = [](double x) { return x < 1e-300 ? 0.0 : x * std::log(x); };
  return -xlogx(t) - xlogx(1.0 - t);
}

NoSpinSolver::NoSpinSolver(RieszPotential pot, SolverConfig cfg)
    : pot_(std::move(pot)), cfg_(std::move(cfg)) {
  pot_.validate();
  cfg_.validate();
  if (pot_.dimension != 3) {
    throw std::invalid_argument("NoSpinSolver: only d = 3 is supported");
  }
  grid_ = std::make_shared<RadialGrid>(pot_, cfg_.grid);
}

Eigen::VectorXd NoSpinSolver::hammerstein_apply(const Eigen::VectorXd& g, double mu,
                                                double T) const {
  if (!(T > 0.0)) throw std::invalid_argument("hammerstein_apply: T must be > 0");
  const Eigen::VectorXd V = grid_->convolve(g);
  const Eigen::VectorXd& k = grid_->nodes();
  Eigen::VectorXd out(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    out[i] = fermi_factor((0.5 * k[i] * k[i] - V[i] - mu) / T);
  }
  return out;
}

double NoSpinSolver::residual(const Eigen::VectorXd& g, double mu, double T) const {
  return sup_norm(hammerstein_apply(g, mu, T) - g);
}

double NoSpinSolver::free_energy(const Eigen::VectorXd& g, double T) const {
  const Eigen::VectorXd V = grid_->convolve(g);
  const Eigen::VectorXd& k = grid_->nodes();
  const Eigen::VectorXd& w = grid_->weights();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double gi = g[i];
    const double entropy = T > 0.0 ? fermi_entropy(std::clamp(gi, 0.0, 1.0)) : 0.0;
    sum += w[i] * (0.5 * k[i] * k[i] * gi - 0.5 * V[i] * gi - T * entropy);
  }
  return RadialGrid::density_prefactor() * sum;
}

double NoSpinSolver::contraction_norm(const FixedPointResult& r) const {
  const Eigen::VectorXd h = r.g.cwiseProduct(Eigen::VectorXd::Ones(r.g.size()) - r.g);
  return grid_->convolve(h).maxCoeff() / r.temperature;
}

bool NoSpinSolver::radially_decreasing(const Eigen::VectorXd& g) const {
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (g[i] > g[i - 1] + cfg_.decreasing_slack) return false;
  }
  return true;
}

FixedPointResult NoSpinSolver::finish(Eigen::VectorXd g, double mu, double T, Branch b,
                                      int iters) const {
  FixedPointResult r;
  r.V = grid_->convolve(g);
  r.mu = mu;
  r.temperature = T;
  r.density = grid_->density(g);
  r.free_energy = free_energy(g, T);
  r.branch = b;
  r.iterations = iters;
  r.residual = residual(g, mu, T);
  r.g = std::move(g);
  return r;
}

FixedPointResult NoSpinSolver::solve_extremal(double mu, double T, Branch branch,
                                              const Eigen::VectorXd* warm_start,
                                              const IterateObserver& observer) const {
  if (!(T > 0.0)) throw std::invalid_argument("solve_extremal: T must be > 0");
  if (branch == Branch::middle) {
    throw std::invalid_argument("solve_extremal: branch must be minimal or maximal");
  }
  const int n = grid_->size();
  const double sign = branch == Branch::minimal ? 1.0 : -1.0;
  Eigen::VectorXd g = warm_start != nullptr ? *warm_start
                      : branch == Branch::minimal ? Eigen::VectorXd::Zero(n)
                                                  : Eigen::VectorXd::Ones(n);
  if (g.size() != n) throw std::invalid_argument("solve_extremal: warm start size mismatch");
  // A warm start is a fixed point at a nearby mu, accurate only to the tolerance.
  const double slack =
      warm_start != nullptr ? std::max(cfg_.monotone_slack, cfg_.tolerance) : cfg_.monotone_slack;
  std::vector<double> history;
  double excess = 0.0;
  for (int it = 0; it < cfg_.max_iterations; ++it) {
    if (observer) observer(it, g);
    Eigen::VectorXd next = hammerstein_apply(g, mu, T);
    const Eigen::VectorXd step = next - g;
    const double against = (-sign * step).maxCoeff();
    if (against > slack) {
      std::ostringstream msg;
      msg << "monotone iteration violated by " << against << " at iteration " << it
          << " (mu=" << mu << ", T=" << T << ", branch=" << to_string(branch) << ")";
      throw MonotonicityError(msg.str());
    }
    excess = std::max(excess, against);
    const double r = sup_norm(step);
    history.push_back(r);
    if (r <= cfg_.tolerance) {
      FixedPointResult out = finish(std::move(g), mu, T, branch, it);
      out.monotone_excess = excess;
      return out;
    }
    // Past a fold the iterates crawl through a bottleneck. Stretch the step
    // as far as the stretched point stays a sub- (super-) solution, which
    // keeps it below (above) the extremal fixed point.
    if (it >= 100 && it % 100 == 0 && r > 0.5 * history[it - 100]) {
      for (double omega = 1 << 20; omega >= 2.0; omega *= 0.5) {
        Eigen::VectorXd trial = (g + omega * step).cwiseMax(0.0).cwiseMin(1.0);
        if ((sign * (trial - hammerstein_apply(trial, mu, T))).maxCoeff() <=
            cfg_.monotone_slack) {
          next = std::move(trial);
          break;
        }
      }
    }
    g = std::move(next);
    // Near a fold the iteration slows to a crawl; once close, polish with
    // Newton and keep the result only if it lies beyond the iterate.
    if (it > 0 && it % 500 == 0 && r <= 1e-6) {
      try {
        FixedPointResult out = newton_at_mu(g, mu, T, branch);
        if ((sign * (g - out.g)).maxCoeff() <= cfg_.monotone_slack) {
          out.iterations += it;
          out.monotone_excess = excess;
          return out;
        }
      } catch (const ConvergenceError&) {
      }
    }
  }
  std::ostringstream msg;
  msg << "solve_extremal: no convergence in " << cfg_.max_iterations
      << " iterations (mu=" << mu << ", T=" << T << ", residual=" << history.back() << ")";
  throw ConvergenceError(msg.str(), std::move(history));
}

FixedPointResult NoSpinSolver::newton_at_mu(const Eigen::VectorXd& g0, double mu, double T,
                                            Branch label) const {
  const Eigen::MatrixXd& W = grid_->convolution();
  Eigen::VectorXd g = g0;
  std::vector<double> history;
  for (int it = 0; it < 60; ++it) {
    const Eigen::VectorXd G = hammerstein_apply(g, mu, T);
    const Eigen::VectorXd F = g - G;
    const double r = sup_norm(F);
    history.push_back(r);
    if (r <= cfg_.tolerance) return finish(std::move(g), mu, T, label, it);
    const Eigen::VectorXd D = jacobian_diagonal(G, T);
    Eigen::MatrixXd J = -(D.asDiagonal() * W);
    J.diagonal().array() += 1.0;
    const Eigen::VectorXd delta = J.partialPivLu().solve(-F);
    bool accepted = false;
    for (double theta : {1.0, cfg_.damping, 0.1}) {
      Eigen::VectorXd trial = (g + theta * delta).cwiseMax(0.0).cwiseMin(1.0);
      if (residual(trial, mu, T) < r) {
        g = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  throw ConvergenceError("newton_at_mu: no convergence", std::move(history));
}

FixedPointResult NoSpinSolver::newton_at_density(const Eigen::VectorXd& g0, double mu0,
                                                 double rho, double T, Branch label) const {
  const int n = grid_->size();
  const Eigen::MatrixXd& W = grid_->convolution();
  const Eigen::VectorXd dens = RadialGrid::density_prefactor() * grid_->weights() / rho;
  Eigen::VectorXd g = g0;
  double mu = mu0;
  std::vector<double> history;
  auto merit = [&](const Eigen::VectorXd& gg, double m) {
    const double fd = std::abs(dens.dot(gg) - 1.0);
    return std::max(sup_norm(hammerstein_apply(gg, m, T) - gg), fd);
  };
  // The factorization is reused while it keeps halving the merit.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  bool fresh = false;
  bool have_lu = false;
  for (int it = 0; it < 60; ++it) {
    const Eigen::VectorXd G = hammerstein_apply(g, mu, T);
    const Eigen::VectorXd F = g - G;
    const double fd = dens.dot(g) - 1.0;
    const double r = sup_norm(F);
    history.push_back(std::max(r, std::abs(fd)));
    if (r <= cfg_.tolerance && std::abs(fd) <= 0.1 * cfg_.density_rtol) {
      return finish(std::move(g), mu, T, label, it);
    }
    const bool stalled = history.size() >= 2 &&
                         history.back() > 0.5 * history[history.size() - 2];
    if (!have_lu || (stalled && !fresh)) {
      const Eigen::VectorXd D = jacobian_diagonal(G, T);
      Eigen::MatrixXd J(n + 1, n + 1);
      J.topLeftCorner(n, n) = -(D.asDiagonal() * W);
      J.topLeftCorner(n, n).diagonal().array() += 1.0;
      J.topRightCorner(n, 1) = -D;
      J.bottomLeftCorner(1, n) = dens.transpose();
      J(n, n) = 0.0;
      lu.compute(J);
      have_lu = true;
      fresh = true;
    } else {
      fresh = false;
    }
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = -F;
    rhs[n] = -fd;
    const Eigen::VectorXd delta = lu.solve(rhs);
    const double current = history.back();
    bool accepted = false;
    for (double theta : {1.0, cfg_.damping, 0.1}) {
      Eigen::VectorXd trial = (g + theta * delta.head(n)).cwiseMax(0.0).cwiseMin(1.0);
      const double trial_mu = mu + theta * delta[n];
      if (merit(trial, trial_mu) < current) {
        g = std::move(trial);
        mu = trial_mu;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (fresh) break;
      have_lu = false;  // stale Jacobian, rebuild next round
    }
  }
  throw ConvergenceError("newton_at_density: no convergence", std::move(history));
}

FixedPointResult NoSpinSolver::solve_middle(const FixedPointResult& gmin,
                                            const FixedPointResult& gmax) const {
  const double mu = gmin.mu;
  const double T = gmin.temperature;
  if (gmax.mu != mu || gmax.temperature != T) {
    throw std::invalid_argument("solve_middle: endpoints at different (mu, T)");
  }
  if (sup_norm(gmax.g - gmin.g) <= 10.0 * cfg_.tolerance) {
    throw std::invalid_argument("solve_middle: minimal and maximal solutions coincide");
  }
  const int n = grid_->size();
  const int m = cfg_.beads;
  const Eigen::VectorXd& w = grid_->weights();
  const Eigen::VectorXd& k = grid_->nodes();
  Eigen::MatrixXd path(n, m);
  for (int j = 0; j < m; ++j) {
    const double s = static_cast<double>(j) / (m - 1);
    path.col(j) = (1.0 - s) * gmin.g + s * gmax.g;
  }
  auto apply_all = [&](const Eigen::MatrixXd& B) {
    Eigen::MatrixXd V = grid_->convolution() * B;
    Eigen::MatrixXd out(n, m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        out(i, j) = fermi_factor((0.5 * k[i] * k[i] - V(i, j) - mu) / T);
      }
    }
    return out;
  };
  auto reparametrize = [&](Eigen::MatrixXd& B) {
    std::vector<double> arc(m, 0.0);
    for (int j = 1; j < m; ++j) {
      const Eigen::VectorXd d = B.col(j) - B.col(j - 1);
      arc[j] = arc[j - 1] + std::sqrt(w.dot(d.cwiseProduct(d)));
    }
    if (!(arc.back() > 0.0)) return;
    Eigen::MatrixXd out(n, m);
    out.col(0) = B.col(0);
    out.col(m - 1) = B.col(m - 1);
    int seg = 1;
    for (int j = 1; j < m - 1; ++j) {
      const double target = arc.back() * j / (m - 1);
      while (seg < m - 1 && arc[seg] < target) ++seg;
      const double span = arc[seg] - arc[seg - 1];
      const double frac = span > 0.0 ? (target - arc[seg - 1]) / span : 0.0;
      out.col(j) = (1.0 - frac) * B.col(seg - 1) + frac * B.col(seg);
    }
    B = std::move(out);
  };

  for (int it = 0; it < cfg_.string_iterations; ++it) {
    Eigen::MatrixXd next = apply_all(path);
    next.col(0) = gmin.g;
    next.col(m - 1) = gmax.g;
    if ((it + 1) % cfg_.reparam_every == 0) reparametrize(next);
    const double change = (next - path).cwiseAbs().maxCoeff();
    path = std::move(next);
    if (change < 1e-9) break;
  }

  // Residual-stationary beads with density away from both endpoints.
  const Eigen::MatrixXd mapped = apply_all(path);
  std::vector<double> res(m), dens(m);
  for (int j = 0; j < m; ++j) {
    res[j] = (mapped.col(j) - path.col(j)).cwiseAbs().maxCoeff();
    dens[j] = grid_->density(path.col(j));
  }
  const double gap = gmax.density - gmin.density;
  std::vector<int> candidates;
  for (int j = 1; j < m - 1; ++j) {
    const bool interior = dens[j] > gmin.density + 0.02 * gap &&
                          dens[j] < gmax.density - 0.02 * gap;
    if (interior && res[j] <= res[j - 1] && res[j] <= res[j + 1]) candidates.push_back(j);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](int a, int b) { return res[a] < res[b]; });

  FixedPointResult none = finish(path.col(m / 2), mu, T, Branch::middle, 0);
  none.status = MiddleStatus::no_middle_solution;
  none.middle_candidates = static_cast<int>(candidates.size());
  for (int j : candidates) {
    try {
      FixedPointResult r = newton_at_mu(path.col(j), mu, T, Branch::middle);
      const double slack = 1e-8;
      const bool between = r.density > gmin.density * (1.0 + 1e-6) &&
                           r.density < gmax.density * (1.0 - 1e-6);
      const bool sandwiched = (r.g - gmin.g).minCoeff() >= -slack &&
                              (gmax.g - r.g).minCoeff() >= -slack;
      if (between && sandwiched) {
        r.middle_candidates = static_cast<int>(candidates.size());
        return r;
      }
    } catch (const ConvergenceError&) {
      // try the next candidate bead
    }
  }
  return none;
}

FixedPointResult NoSpinSolver::solve_at_density(double rho, double T, Branch branch) const {
  if (!(rho > 0.0) || !(T > 0.0)) {
    throw std::invalid_argument("solve_at_density: need rho > 0 and T > 0");
  }
  if (branch == Branch::middle) {
    // Continue in density from the minimal branch just below its fold.
    FixedPointResult start;
    try {
      solve_at_density(rho, T, Branch::minimal);
      throw BracketError("solve_at_density: density reached by the minimal branch", {});
    } catch (const BracketError& e) {
      if (e.table().empty()) throw;
      double best_mu = -std::numeric_limits<double>::infinity();
      for (const auto& row : e.table()) {
        if (row.density < rho && row.mu > best_mu) best_mu = row.mu;
      }
      start = solve_extremal(best_mu, T, Branch::minimal);
    }
    const FixedPointResult max_probe = [&] {
      try {
        return solve_at_density(rho, T, Branch::maximal);
      } catch (const BracketError&) {
        return FixedPointResult{};
      }
    }();
    if (max_probe.g.size() != 0) {
      throw BracketError("solve_at_density: density reached by the maximal branch", {});
    }
    Eigen::VectorXd g = start.g;
    double mu = start.mu;
    double rho_now = start.density;
    double step = std::log(rho / rho_now) / 8.0;
    while (true) {
      const double remaining = std::log(rho / rho_now);
      const double h = std::abs(remaining) <= std::abs(step) ? remaining : step;
      const double target = rho_now * std::exp(h);
      try {
        FixedPointResult r = newton_at_density(g, mu, target, T, Branch::middle);
        g = r.g;
        mu = r.mu;
        rho_now = target;
        if (h == remaining) return r;
      } catch (const ConvergenceError&) {
        step *= 0.5;
        if (std::abs(step) < 1e-6) throw;
      }
    }
  }

  const ZeroTemperatureModel t0(pot_);
  std::vector<DensitySample> table;
  std::map<double, FixedPointResult> solved;
  auto evaluate = [&](double mu) -> const FixedPointResult& {
    const Eigen::VectorXd* warm = nullptr;
    if (branch == Branch::minimal) {
      auto it = solved.lower_bound(mu);
      if (it != solved.begin()) warm = &std::prev(it)->second.g;
    } else {
      auto it = solved.upper_bound(mu);
      if (it != solved.end()) warm = &it->second.g;
    }
    FixedPointResult r = solve_extremal(mu, T, branch, warm);
    table.push_back({mu, r.density});
    return solved.emplace(mu, std::move(r)).first->second;
  };

  const double mu0 = t0.chemical_potential(rho);
  double step = std::max({T, 0.1 * std::abs(mu0), 1e-3});
  double mu_lo = mu0;
  double mu_hi = mu0;
  double rho_lo = evaluate(mu0).density;
  double rho_hi = rho_lo;
  for (int i = 0; i < 80 && rho_lo >= rho; ++i) {
    mu_hi = mu_lo;
    rho_hi = rho_lo;
    mu_lo -= step;
    step *= 2.0;
    rho_lo = evaluate(mu_lo).density;
  }
  for (int i = 0; i < 80 && rho_hi <= rho; ++i) {
    mu_lo = mu_hi;
    rho_lo = rho_hi;
    mu_hi += step;
    step *= 2.0;
    rho_hi = evaluate(mu_hi).density;
  }
  if (!(rho_lo < rho && rho < rho_hi)) {
    if (std::abs(rho_lo / rho - 1.0) <= cfg_.density_rtol) return solved.at(mu_lo);
    if (std::abs(rho_hi / rho - 1.0) <= cfg_.density_rtol) return solved.at(mu_hi);
    throw BracketError("solve_at_density: could not bracket the density", table);
  }

  // Illinois false position on log(density / rho), bisection safeguard.
  double f_lo = std::log(rho_lo / rho);
  double f_hi = std::log(rho_hi / rho);
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double mu = (mu_lo * f_hi - mu_hi * f_lo) / (f_hi - f_lo);
    const double width = mu_hi - mu_lo;
    if (!(mu > mu_lo + 0.01 * width && mu < mu_hi - 0.01 * width)) {
      mu = 0.5 * (mu_lo + mu_hi);
    }
    const FixedPointResult& r = evaluate(mu);
    const double f = std::log(r.density / rho);
    if (std::abs(r.density / rho - 1.0) <= cfg_.density_rtol) return r;
    if (f < 0.0) {
      mu_lo = mu;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      mu_hi = mu;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
    if (mu_hi - mu_lo <= 1e-14 * std::max(1.0, std::abs(mu))) {
      std::ostringstream msg;
      msg << "solve_at_density: " << to_string(branch) << " branch jumps over rho=" << rho
          << " at mu=" << mu << " (T=" << T << ")";
      throw BracketError(msg.str(), table);
    }
  }
  throw BracketError("solve_at_density: root finding did not converge", table);
}

double exchange_bound(const RieszPotential& pot, double rho) {
  pot.validate();
  if (!(rho >= 0.0)) throw std::invalid_argument("exchange_bound: rho must be >= 0");
  const int d = pot.dimension;
  const double c_tf = thomas_fermi_constant(d);
  const double sphere = surface_area(d);
  double total = 0.0;
  for (const auto& t : pot.terms) {
    const double C = t.kappa * sphere / t.s * std::pow(c_tf, 0.5 * t.s);
    total += C * std::pow(rho, t.s / d);
  }
  return total;
}

UniquenessRegion uniqueness_region(const RieszPotential& pot, double rho, double T,
                                   const UniquenessConstants& constants) {
  if (!(rho > 0.0) || !(T > 0.0)) {
    throw std::invalid_argument("uniqueness_region: need rho > 0 and T > 0");
  }
  const double bound = exchange_bound(pot, rho);
  if (bound < T) return UniquenessRegion::inside_Omega1;
  const bool critical = pot.terms.size() == 1 && pot.terms.front().s == 1.0;
  if (critical) {
    const double r = std::pow(rho, 1.0 / pot.dimension);
    if (bound > 0.5 * T && T * std::exp(constants.alpha * r) > constants.C) {
      return UniquenessRegion::inside_Omega2;
    }
  } else if (bound > 0.5 * T && rho > constants.rho_C) {
    return UniquenessRegion::inside_Omega2;
  }
  return UniquenessRegion::outside;
}

double free_gas_density(double mu, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("free_gas_density: T must be > 0");
  const double k_cut = std::sqrt(2.0 * (std::max(mu, 0.0) + 80.0 * T));
  auto f = [&](double k) { return k * k * fermi_factor((0.5 * k * k - mu) / T); };
  double achieved = 0.0;
  const double integral = integrate_composite(f, 0.0, k_cut, 1e-14, 20, 1 << 14, &achieved);
  return RadialGrid::density_prefactor() * integral;
}

double free_gas_mu(double rho, double T) {
  if (!(rho > 0.0) || !(T > 0.0)) {
    throw std::invalid_argument("free_gas_mu: need rho > 0 and T > 0");
  }
  double lo = -T;
  double hi = T;
  while (free_gas_density(lo, T) > rho) lo = 2.0 * lo - T;
  while (free_gas_density(hi, T) < rho) hi = 2.0 * hi + T;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (free_gas_density(mid, T) < rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void write_dump(std::ostream& os, const NoSpinSolver& solver, const FixedPointResult& r) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::scientific << std::setprecision(16);
  os << "# mu = " << r.mu << "\n"
     << "# T = " << r.temperature << "\n"
     << "# rho = " << r.density << "\n"
     << "# branch = " << to_string(r.branch) << "\n"
     << "# residual = " << r.residual << "\n"
     << "# k,g,V\n";
  const Eigen::VectorXd& k = solver.grid().nodes();
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    os << k[i] << "," << r.g[i] << "," << r.V[i] << "\n";
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace hfgas
