#include "hfgas/phase_diagram.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hfgas/optimize.hpp"

namespace hfgas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs job(i) for i in [0, count) on `workers` threads; results are written
// by index so completion order does not matter.
void parallel_for(int count, int workers, const std::function<void(int)>& job) {
  const int n = std::clamp(workers, 1, std::max(1, count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Labels each density-ordered point by the mu-branch it lies on: minimal if
// mu exceeds every mu at lower density, maximal if it is below every mu at
// higher density, middle otherwise.
void label_branches(std::vector<CurvePoint>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> suffix_min(n + 1, std::numeric_limits<double>::infinity());
  for (std::size_t i = n; i-- > 0;) suffix_min[i] = std::min(suffix_min[i + 1], pts[i].mu);
  double prefix_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i].mu > prefix_max) {
      pts[i].branch = Branch::minimal;
    } else if (pts[i].mu < suffix_min[i + 1]) {
      pts[i].branch = Branch::maximal;
    } else {
      pts[i].branch = Branch::middle;
    }
    prefix_max = std::max(prefix_max, pts[i].mu);
  }
}

struct Minimizer {
  double t;
  double value;
};

// Coarse scan of P on [0, 1/2] followed by golden-section refinement of the
// two best local minima. Endpoint minima are compared exactly.
std::vector<Minimizer> minimize_on_half(const std::function<double(double)>& P,
                                        int coarse, double tol) {
  std::vector<double> ts(coarse), vals(coarse);
  for (int i = 0; i < coarse; ++i) {
    ts[i] = 0.5 * i / (coarse - 1);
    vals[i] = P(ts[i]);
  }
  std::vector<int> minima;
  for (int i = 0; i < coarse; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == coarse - 1 || vals[i] <= vals[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  if (minima.size() > 2) minima.resize(2);
  std::vector<Minimizer> out;
  for (int i : minima) {
    const double lo = ts[std::max(0, i - 1)];
    const double hi = ts[std::min(coarse - 1, i + 1)];
    const ScalarMinimum m = golden_section(P, lo, hi, tol);
    Minimizer best{m.x, m.value};
    if (i == 0 && vals[0] <= best.value) best = {0.0, vals[0]};
    if (i == coarse - 1 && vals[i] <= best.value) best = {0.5, vals[i]};
    out.push_back(best);
  }
  std::sort(out.begin(), out.end(),
            [](const Minimizer& a, const Minimizer& b) { return a.value < b.value; });
  return out;
}

// Near t = 0 the energy gain of the minority channel drops below round-off
// long before the optimum is reached, so the stationarity condition
// mu(t rho) = mu((1 - t) rho) is solved in log t instead.
double refine_small_t(double rho, double t_hi, const std::function<double(double)>& M) {
  auto h = [&](double u) {
    const double t = std::exp(u);
    return M(t * rho) - M((1.0 - t) * rho);
  };
  double lo = std::log(1e-200);
  double hi = std::log(t_hi);
  if (!(h(hi) > 0.0) || !(h(lo) < 0.0)) return -1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

PhasePoint assemble_point(double rho, double T, const std::function<double(double)>& P,
                          const std::function<double(double)>& M, const SpinOptions& opt) {
  PhasePoint pt;
  pt.rho = rho;
  pt.T = T;
  pt.energy_para = P(0.5);
  pt.energy_ferro = P(0.0);
  std::vector<Minimizer> found = minimize_on_half(P, opt.coarse_points, opt.t_tolerance);
  const double spacing = 0.5 / (opt.coarse_points - 1);
  for (auto& m : found) {
    if (m.t < spacing) {
      const double t = refine_small_t(rho, spacing, M);
      if (t > 0.0) m = {t, std::min(P(t), m.value)};
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Minimizer& a, const Minimizer& b) { return a.value < b.value; });
  const Minimizer& best = found.front();
  pt.t_opt = best.t;
  pt.energy_opt = best.value;
  if (pt.energy_para <= pt.energy_opt) {
    pt.energy_opt = pt.energy_para;
    if (std::abs(best.t - 0.5) <= opt.para_tolerance) pt.t_opt = 0.5;
  }
  pt.classification = std::abs(pt.t_opt - 0.5) <= opt.para_tolerance ? PhaseTag::paramagnetic
                                                                      : PhaseTag::ferromagnetic;
  if (found.size() > 1) {
    const double scale = std::max(std::abs(best.value), 1e-300);
    if (std::abs(found[1].value - best.value) <= 1e-12 * scale &&
        std::abs(found[1].t - best.t) > 10 * opt.t_tolerance) {
      pt.classification = PhaseTag::coexistence;
      pt.t_alt = found[1].t;
    }
  }
  return pt;
}

}  // namespace

NoSpinCurve NoSpinCurve::build(const NoSpinSolver& solver, double T, double rho_lo,
                               double rho_hi, int points) {
  if (!(T > 0.0) || !(rho_lo > 0.0) || !(rho_hi > rho_lo) || points < 2) {
    throw std::invalid_argument("NoSpinCurve: need T > 0, 0 < rho_lo < rho_hi, points >= 2");
  }
  NoSpinCurve curve;
  curve.T_ = T;
  auto record = [&](const FixedPointResult& r) {
    curve.points_.push_back({r.density, r.mu, r.free_energy, Branch::minimal, r.residual,
                             solver.radially_decreasing(r.g), r.V.maxCoeff()});
  };

  FixedPointResult cur;
  try {
    cur = solver.solve_at_density(rho_lo, T, Branch::minimal);
  } catch (const BracketError& e) {
    // rho_lo lies past the fold of the minimal branch: start from the largest
    // minimal-branch mu that stays below it.
    double best_mu = -std::numeric_limits<double>::infinity();
    for (const auto& row : e.table()) {
      if (row.density < rho_lo && row.mu > best_mu) best_mu = row.mu;
    }
    if (!std::isfinite(best_mu)) throw;
    cur = solver.solve_extremal(best_mu, T, Branch::minimal);
    rho_lo = cur.density;
  }
  record(cur);
  Eigen::VectorXd g_prev = cur.g;
  double mu_prev = cur.mu;
  double log_prev = std::log(cur.density);
  const double log_lo = std::log(rho_lo);
  const double log_hi = std::log(rho_hi);

  // Advances from the current solution to density exp(target) with a secant
  // predictor, splitting the step when Newton fails.
  std::function<void(double, int)> advance = [&](double target, int depth) {
    const double log_now = std::log(cur.density);
    const double h = target - log_now;
    const double h_prev = log_now - log_prev;
    Eigen::VectorXd guess = cur.g;
    double mu_guess = cur.mu;
    if (h_prev > 0.0) {
      const double ratio = h / h_prev;
      guess = (cur.g + ratio * (cur.g - g_prev)).cwiseMax(0.0).cwiseMin(1.0);
      mu_guess = cur.mu + ratio * (cur.mu - mu_prev);
    }
    try {
      FixedPointResult next =
          solver.newton_at_density(guess, mu_guess, std::exp(target), T, Branch::middle);
      g_prev = cur.g;
      mu_prev = cur.mu;
      log_prev = log_now;
      cur = std::move(next);
    } catch (const ConvergenceError&) {
      if (depth >= 8) throw;
      advance(log_now + 0.5 * h, depth + 1);
      advance(target, depth + 1);
    }
  };
  for (int i = 1; i < points; ++i) {
    advance(log_lo + (log_hi - log_lo) * i / (points - 1), 0);
    record(cur);
  }
  label_branches(curve.points_);
  return curve;
}

double NoSpinCurve::energy(double rho) const {
  if (!(rho >= 0.0)) throw std::invalid_argument("NoSpinCurve::energy: rho must be >= 0");
  if (rho == 0.0) return 0.0;
  const CurvePoint& lo = points_.front();
  if (rho < lo.rho) {
    const double b = (lo.mu - T_ - lo.free_energy / lo.rho) / lo.rho;
    const double a = lo.free_energy / lo.rho - b * lo.rho;
    return T_ * rho * std::log(rho / lo.rho) + a * rho + b * rho * rho;
  }
  if (rho > points_.back().rho * (1.0 + 1e-12)) {
    throw std::out_of_range("NoSpinCurve::energy: density above the table");
  }
  auto it = std::upper_bound(points_.begin(), points_.end(), rho,
                             [](double r, const CurvePoint& p) { return r < p.rho; });
  if (it == points_.end()) --it;
  if (it == points_.begin()) ++it;
  const CurvePoint& p0 = *(it - 1);
  const CurvePoint& p1 = *it;
  const double h = p1.rho - p0.rho;
  const double s = (rho - p0.rho) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * p0.free_energy + h10 * h * p0.mu + h01 * p1.free_energy + h11 * h * p1.mu;
}

double NoSpinCurve::mu(double rho) const {
  if (!(rho > 0.0)) throw std::invalid_argument("NoSpinCurve::mu: rho must be > 0");
  const CurvePoint& lo = points_.front();
  if (rho < lo.rho) {
    const double b = (lo.mu - T_ - lo.free_energy / lo.rho) / lo.rho;
    const double a = lo.free_energy / lo.rho - b * lo.rho;
    return T_ * std::log(rho / lo.rho) + T_ + a + 2 * b * rho;
  }
  if (rho > points_.back().rho * (1.0 + 1e-12)) {
    throw std::out_of_range("NoSpinCurve::mu: density above the table");
  }
  auto it = std::upper_bound(points_.begin(), points_.end(), rho,
                             [](double r, const CurvePoint& p) { return r < p.rho; });
  if (it == points_.end()) --it;
  if (it == points_.begin()) ++it;
  const CurvePoint& p0 = *(it - 1);
  const CurvePoint& p1 = *it;
  const double h = p1.rho - p0.rho;
  const double s = (rho - p0.rho) / h;
  const double d00 = 6 * s * (s - 1) / h;
  const double d10 = (1 - s) * (1 - 3 * s);
  const double d01 = -d00;
  const double d11 = s * (3 * s - 2);
  return d00 * p0.free_energy + d10 * p0.mu + d01 * p1.free_energy + d11 * p1.mu;
}

FixedPointResult best_solution_at_density(const NoSpinSolver& solver, double rho, double T) {
  std::vector<FixedPointResult> found;
  std::string failures;
  for (Branch b : {Branch::minimal, Branch::maximal}) {
    try {
      found.push_back(solver.solve_at_density(rho, T, b));
    } catch (const BracketError& e) {
      failures += std::string(e.what()) + "; ";
    }
  }
  if (found.empty()) {
    found.push_back(solver.solve_at_density(rho, T, Branch::middle));
  }
  return *std::min_element(found.begin(), found.end(),
                           [](const FixedPointResult& a, const FixedPointResult& b) {
                             return a.free_energy < b.free_energy;
                           });
}

PhasePoint spin_energy(const NoSpinCurve& curve, double rho, const SpinOptions& opt) {
  if (!(rho > 0.0)) throw std::invalid_argument("spin_energy: rho must be > 0");
  auto P = [&](double t) { return curve.energy(t * rho) + curve.energy((1.0 - t) * rho); };
  auto M = [&](double r) { return curve.mu(r); };
  PhasePoint pt = assemble_point(rho, curve.temperature(), P, M, opt);
  pt.mu_minor = pt.t_opt > 0.0 ? curve.mu(pt.t_opt * rho) : kNaN;
  pt.mu_major = curve.mu((1.0 - pt.t_opt) * rho);
  return pt;
}

PhasePoint spin_energy_direct(const NoSpinSolver& solver, double rho, double T,
                              const SpinOptions& opt) {
  if (!(rho > 0.0) || !(T > 0.0)) {
    throw std::invalid_argument("spin_energy_direct: need rho > 0 and T > 0");
  }
  std::map<double, FixedPointResult> cache;
  auto solve = [&](double r) -> const FixedPointResult& {
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    return cache.emplace(r, best_solution_at_density(solver, r, T)).first->second;
  };
  double current_t = 0.0;
  auto E = [&](double r) { return r == 0.0 ? 0.0 : solve(r).free_energy; };
  auto P = [&](double t) {
    current_t = t;
    return E(t * rho) + E((1.0 - t) * rho);
  };
  PhasePoint pt;
  try {
    pt = assemble_point(rho, T, P, [&](double r) { return solve(r).mu; }, opt);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "sub-solve failed at t=" << current_t << ": " << e.what();
    throw std::runtime_error(msg.str());
  }
  pt.mu_minor = pt.t_opt > 0.0 ? solve(pt.t_opt * rho).mu : kNaN;
  pt.mu_major = solve((1.0 - pt.t_opt) * rho).mu;
  return pt;
}

bool matched_mu_check(const PhasePoint& point) {
  if (point.t_opt == 0.5) return true;
  const double scale = std::max(std::abs(point.mu_minor), std::abs(point.mu_major));
  return std::abs(point.mu_minor - point.mu_major) <= 1e-3 * scale;
}

std::vector<ContourSegment> marching_squares(const std::vector<double>& rho_grid,
                                             const std::vector<double>& T_grid,
                                             const std::vector<std::vector<double>>& values,
                                             const std::vector<double>& levels) {
  std::vector<ContourSegment> out;
  const std::size_t nr = rho_grid.size();
  const std::size_t nt = T_grid.size();
  for (double level : levels) {
    for (std::size_t i = 0; i + 1 < nr; ++i) {
      for (std::size_t j = 0; j + 1 < nt; ++j) {
        // Corners counter-clockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
        const double x[4] = {rho_grid[i], rho_grid[i + 1], rho_grid[i + 1], rho_grid[i]};
        const double y[4] = {T_grid[j], T_grid[j], T_grid[j + 1], T_grid[j + 1]};
        const double v[4] = {values[i][j], values[i + 1][j], values[i + 1][j + 1],
                             values[i][j + 1]};
        if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3])) {
          continue;
        }
        int code = 0;
        for (int c = 0; c < 4; ++c) {
          if (v[c] >= level) code |= 1 << c;
        }
        if (code == 0 || code == 15) continue;
        auto point_on = [&](int e, double& px, double& py) {
          const int a = e;
          const int b = (e + 1) % 4;
          const double f = (level - v[a]) / (v[b] - v[a]);
          px = x[a] + f * (x[b] - x[a]);
          py = y[a] + f * (y[b] - y[a]);
        };
        std::vector<int> edges;
        for (int e = 0; e < 4; ++e) {
          const bool above_a = (code >> e) & 1;
          const bool above_b = (code >> ((e + 1) % 4)) & 1;
          if (above_a != above_b) edges.push_back(e);
        }
        if (edges.size() == 2) {
          ContourSegment s{level, 0, 0, 0, 0};
          point_on(edges[0], s.rho0, s.T0);
          point_on(edges[1], s.rho1, s.T1);
          out.push_back(s);
        } else if (edges.size() == 4) {
          // Saddle: the centre value decides which corners connect.
          const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
          const bool centre_above = centre >= level;
          const bool corner0_above = code & 1;
          const int pairs[2][2][2] = {{{0, 1}, {2, 3}}, {{3, 0}, {1, 2}}};
          const int pick = centre_above == corner0_above ? 1 : 0;
          for (const auto& pr : pairs[pick]) {
            ContourSegment s{level, 0, 0, 0, 0};
            point_on(pr[0], s.rho0, s.T0);
            point_on(pr[1], s.rho1, s.T1);
            out.push_back(s);
          }
        }
      }
    }
  }
  return out;
}

PhaseDiagram sweep(const RieszPotential& pot, const std::vector<double>& rho_grid,
                   const std::vector<double>& T_grid, const SolverConfig& cfg,
                   const SweepOptions& opt) {
  auto increasing = [](const std::vector<double>& v) {
    if (v.empty()) return false;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] > v[i - 1])) return false;
    }
    return true;
  };
  if (!increasing(rho_grid) || !increasing(T_grid) || !(rho_grid.front() > 0.0) ||
      !(T_grid.front() > 0.0)) {
    throw std::invalid_argument("sweep: grids must be positive and strictly increasing");
  }
  const NoSpinSolver solver(pot, cfg);
  const double rho_top = rho_grid.back();
  const double rho_floor = std::min(opt.curve_rho_lo, 0.01 * rho_grid.front());
  auto build_curve = [&](double T) {
    return NoSpinCurve::build(solver, T, rho_floor, rho_top, opt.curve_points);
  };
  auto non_para = [&](const PhasePoint& p) { return p.t_opt < 0.5 - opt.curie_margin; };

  PhaseDiagram pd;
  pd.rho_grid = rho_grid;
  pd.T_grid = T_grid;
  const std::size_t nr = rho_grid.size();
  const std::size_t nt = T_grid.size();
  pd.cells.assign(nr, std::vector<PhasePoint>(nt));
  std::vector<std::vector<CurvePoint>> curve_points(nt);
  std::vector<TransitionRow> rows(nt);

  parallel_for(static_cast<int>(nt), opt.workers, [&](int j) {
    const double T = T_grid[j];
    rows[j] = {T, kNaN, kNaN};
    try {
      const NoSpinCurve curve = build_curve(T);
      curve_points[j] = curve.points();
      for (std::size_t i = 0; i < nr; ++i) {
        pd.cells[i][j] = spin_energy(curve, rho_grid[i], opt.spin);
      }
      // Refine the first and last paramagnetic boundaries along rho.
      std::vector<std::size_t> ferro;
      for (std::size_t i = 0; i < nr; ++i) {
        if (non_para(pd.cells[i][j])) ferro.push_back(i);
      }
      auto boundary = [&](double a, double b) {
        const bool fa = non_para(spin_energy(curve, a, opt.spin));
        while (b - a > opt.transition_rtol * b) {
          const double m = 0.5 * (a + b);
          if (non_para(spin_energy(curve, m, opt.spin)) == fa) {
            a = m;
          } else {
            b = m;
          }
        }
        return 0.5 * (a + b);
      };
      if (!ferro.empty()) {
        if (ferro.front() > 0) {
          rows[j].rho_c1 = boundary(rho_grid[ferro.front() - 1], rho_grid[ferro.front()]);
        } else {
          // Ferromagnetic at the first grid density: look for the lower
          // transition further down the tabulated curve.
          double hi = rho_grid.front();
          for (double lo = 0.5 * hi; lo >= curve.rho_lo(); hi = lo, lo *= 0.5) {
            if (!non_para(spin_energy(curve, lo, opt.spin))) {
              rows[j].rho_c1 = boundary(lo, hi);
              break;
            }
          }
        }
        if (ferro.back() + 1 < nr) {
          rows[j].rho_c2 = boundary(rho_grid[ferro.back()], rho_grid[ferro.back() + 1]);
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < nr; ++i) {
        PhasePoint& p = pd.cells[i][j];
        p.rho = rho_grid[i];
        p.T = T;
        p.failed = true;
        p.t_opt = kNaN;
        p.diagnostics = e.what();
      }
    }
  });

  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (pd.cells[i][j].failed) ++pd.failed_cells;
    }
  }
  for (const auto& pts : curve_points) {
    pd.audit_points.insert(pd.audit_points.end(), pts.begin(), pts.end());
  }
  pd.transitions = rows;

  std::vector<std::vector<double>> t_matrix(nr, std::vector<double>(nt));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) t_matrix[i][j] = pd.cells[i][j].t_opt;
  }
  pd.contours = marching_squares(rho_grid, T_grid, t_matrix, opt.contour_levels);

  // Curie temperature: highest grid T with a non-paramagnetic cell, then
  // bisection between it and the next grid temperature.
  int top = -1;
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i < nr; ++i) {
      if (!pd.cells[i][j].failed && non_para(pd.cells[i][j])) top = static_cast<int>(j);
    }
  }
  if (top < 0) {
    pd.curie_temperature = 0.0;
    return pd;
  }
  if (top + 1 == static_cast<int>(nt)) {
    pd.curie_temperature = T_grid[top];
    pd.curie_bracketed = false;
    return pd;
  }
  double T_lo = T_grid[top];
  double T_hi = T_grid[top + 1];
  const int m = std::max(2, opt.curie_rho_points);
  while (T_hi - T_lo > opt.curie_T_tolerance) {
    const double T_mid = 0.5 * (T_lo + T_hi);
    bool any = false;
    try {
      const NoSpinCurve curve = build_curve(T_mid);
      std::vector<char> flags(m, 0);
      parallel_for(m, opt.workers, [&](int i) {
        const double rho = rho_grid.front() + (rho_top - rho_grid.front()) * i / (m - 1);
        flags[i] = non_para(spin_energy(curve, rho, opt.spin)) ? 1 : 0;
      });
      any = std::any_of(flags.begin(), flags.end(), [](char c) { return c != 0; });
    } catch (const std::exception&) {
      any = false;
    }
    (any ? T_lo : T_hi) = T_mid;
  }
  pd.curie_temperature = 0.5 * (T_lo + T_hi);
  pd.curie_bracketed = true;
  return pd;
}

std::vector<MuCurveRow> mu_curve(const RieszPotential& pot, double T,
                                 const std::vector<double>& rho_grid, const SolverConfig& cfg,
                                 const MuCurveOptions& opt) {
  if (rho_grid.empty() || !(rho_grid.front() > 0.0)) {
    throw std::invalid_argument("mu_curve: need a non-empty positive density grid");
  }
  for (std::size_t i = 1; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > rho_grid[i - 1])) {
      throw std::invalid_argument("mu_curve: density grid must be increasing");
    }
  }
  if (!(T >= 0.0)) throw std::invalid_argument("mu_curve: T must be >= 0");
  std::vector<MuCurveRow> rows;
  if (T == 0.0) {
    const ZeroTemperatureModel model(pot);
    std::vector<CurvePoint> pts;
    for (double rho : rho_grid) {
      pts.push_back({rho, model.chemical_potential(rho), model.energy(rho), Branch::minimal,
                     0.0, true, 0.0});
    }
    label_branches(pts);
    for (const auto& p : pts) rows.push_back({p.rho, p.mu, p.branch});
    return rows;
  }

  const NoSpinSolver solver(pot, cfg);
  const double rho_a = rho_grid.front();
  const double rho_b = rho_grid.back();
  // The mu range covered by densities in [rho_a, rho_b], including the
  // interior extrema of a non-monotone mu(rho).
  const NoSpinCurve curve = NoSpinCurve::build(solver, T, rho_a, rho_b, 60);
  double mu_lo = std::numeric_limits<double>::infinity();
  double mu_hi = -mu_lo;
  for (const auto& p : curve.points()) {
    if (p.rho < rho_a * (1.0 - 1e-9)) continue;
    mu_lo = std::min(mu_lo, p.mu);
    mu_hi = std::max(mu_hi, p.mu);
  }
  const int n = std::max(2, opt.mu_points);
  std::vector<double> mus(n);
  for (int i = 0; i < n; ++i) mus[i] = mu_lo + (mu_hi - mu_lo) * i / (n - 1);

  std::vector<FixedPointResult> mins(n), maxs(n);
  for (int i = 0; i < n; ++i) {
    mins[i] = solver.solve_extremal(mus[i], T, Branch::minimal, i > 0 ? &mins[i - 1].g : nullptr);
  }
  for (int i = n - 1; i >= 0; --i) {
    maxs[i] = solver.solve_extremal(mus[i], T, Branch::maximal,
                                    i + 1 < n ? &maxs[i + 1].g : nullptr);
  }
  const double lo_cut = rho_a * (1.0 - 1e-9);
  const double hi_cut = rho_b * (1.0 + 1e-9);
  auto keep = [&](double rho) { return rho >= lo_cut && rho <= hi_cut; };
  for (int i = 0; i < n; ++i) {
    if (keep(mins[i].density)) rows.push_back({mins[i].density, mus[i], Branch::minimal});
    if (keep(maxs[i].density)) rows.push_back({maxs[i].density, mus[i], Branch::maximal});
    const double gap = maxs[i].density - mins[i].density;
    if (opt.with_middle && gap > 1e-6 * maxs[i].density) {
      const FixedPointResult mid = solver.solve_middle(mins[i], maxs[i]);
      if (mid.status == MiddleStatus::found && keep(mid.density)) {
        rows.push_back({mid.density, mus[i], Branch::middle});
      }
    }
  }
  return rows;
}

}  // namespace hfgas
