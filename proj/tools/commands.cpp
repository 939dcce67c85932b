#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hfgas/errors.hpp"
#include "hfgas/kernels.hpp"
#include "hfgas/phase_diagram.hpp"
#include "hfgas/property_suites.hpp"
#include "hfgas/radial_solver.hpp"
#include "hfgas/run_config.hpp"
#include "hfgas/zero_temperature.hpp"

namespace hfgas::cli {

namespace {

namespace fs = std::filesystem;

// CSV number: scientific with 17 significant digits.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

struct Context {
  RunConfig cfg;
  std::string command;

  fs::path out_dir() const { return fs::path(cfg.get("out")); }

  std::ofstream open(const std::string& name) const {
    fs::create_directories(out_dir());
    const fs::path path = out_dir() / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "# command = " << command << "\n";
    cfg.write_header(os);
    return os;
  }
};

double wigner_seitz_radius(int d, double rho) {
  return std::pow(1.0 / (ball_volume(d) * rho), 1.0 / d);
}

int cmd_constants(const Context& ctx, bool machine) {
  const RieszPotential pot = ctx.cfg.potential();
  const int d = pot.dimension;
  std::vector<std::pair<std::string, std::string>> rows;
  auto add = [&](const std::string& key, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, machine ? "%.17g" : "%.10g", v);
    rows.emplace_back(key, buf);
  };
  int failures = 0;
  add("dimension", d);
  add("c_tf", thomas_fermi_constant(d));
  add("kappa_d", kinetic_coefficient(d));
  for (std::size_t i = 0; i < pot.terms.size(); ++i) {
    const std::string prefix = "term" + std::to_string(i + 1) + ".";
    const RieszTerm& t = pot.terms[i];
    try {
      const double c_ds = riesz_normalization(d, t.s);
      add(prefix + "s", t.s);
      add(prefix + "kappa", t.kappa);
      add(prefix + "c_ds", c_ds);
      add(prefix + "c_dirac", dirac_constant(d, t.s));
      add(prefix + "lambda_ds", exchange_coefficient(d, t.s));
      add(prefix + "lambda", t.kappa / c_ds * exchange_coefficient(d, t.s));
    } catch (const std::exception& e) {
      rows.emplace_back(prefix + "error", e.what());
      ++failures;
    }
  }
  try {
    const TransitionReport rep = classify_transition(pot);
    rows.emplace_back("transition.kind", to_string(rep.kind));
    for (const auto& c : rep.critical_densities) {
      add("transition." + c.label, c.rho);
      add("transition." + c.label + ".r_s", wigner_seitz_radius(d, c.rho));
    }
  } catch (const std::invalid_argument& e) {
    rows.emplace_back("transition.kind", "unclassified");
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) {
    if (machine) {
      std::cout << k << "=" << v << "\n";
    } else {
      std::cout << k << std::string(width + 2 - k.size(), ' ') << v << "\n";
    }
  }
  return failures == 0 ? kOk : kNumericalFailure;
}

int cmd_t0(const Context& ctx) {
  const RieszPotential pot = ctx.cfg.potential();
  const std::vector<double> grid = ctx.cfg.rho_grid();
  const int workers = ctx.cfg.get_int("workers");
  const ZeroTemperatureModel model(pot);
  const std::vector<PolarizationArgmin> scan = scan_polarization(pot, grid, workers);
  const std::vector<TransitionEvent> events = detect_transitions(model, scan);

  {
    std::ofstream os = ctx.open("t0_scan.csv");
    os << "rho,t_opt,energy,phase\n";
    for (const auto& p : scan) {
      os << num(p.rho) << "," << num(p.t) << "," << num(p.energy) << "," << to_string(p.tag)
         << "\n";
    }
  }
  {
    std::ofstream os = ctx.open("t0_transitions.csv");
    os << "rho,kind,label,t_below,t_above\n";
    for (const auto& e : events) {
      os << num(e.rho) << "," << to_string(e.kind) << "," << e.label << "," << num(e.t_below)
         << "," << num(e.t_above) << "\n";
    }
  }
  std::vector<double> curve_rho = ctx.cfg.get_list("t0.curve_rho");
  if (curve_rho.empty()) {
    curve_rho = {grid.front(), grid.back()};
    for (const auto& e : events) curve_rho.push_back(e.rho);
    std::sort(curve_rho.begin(), curve_rho.end());
  }
  {
    const int points = ctx.cfg.get_int("t0.t_points");
    if (points < 2) throw ConfigError("config: t0.t_points must be >= 2");
    std::ofstream os = ctx.open("t0_curves.csv");
    os << "rho,t,energy\n";
    for (double rho : curve_rho) {
      for (const auto& s : polarization_curve(model, rho, points).samples) {
        os << num(rho) << "," << num(s.t) << "," << num(s.energy) << "\n";
      }
    }
  }
  std::cout << "density scan: " << grid.size() << " points, " << events.size()
            << " transition(s)\n";
  for (const auto& e : events) {
    std::cout << "  " << to_string(e.kind) << " " << e.label << " at rho = " << num(e.rho)
              << " (t " << short_num(e.t_below) << " -> " << short_num(e.t_above) << ")\n";
  }
  try {
    const TransitionReport rep = classify_transition(pot);
    std::cout << "closed form: " << to_string(rep.kind);
    for (const auto& c : rep.critical_densities) {
      std::cout << ", " << c.label << " = " << num(c.rho);
    }
    std::cout << "\n";
  } catch (const std::invalid_argument&) {
  }
  return kOk;
}

SpinOptions spin_options(const RunConfig& cfg) {
  SpinOptions s;
  s.coarse_points = cfg.get_int("spin.coarse_points");
  s.t_tolerance = cfg.get_double("spin.t_tolerance");
  s.para_tolerance = cfg.get_double("spin.para_tolerance");
  if (s.coarse_points < 3 || !(s.t_tolerance > 0.0) || !(s.para_tolerance >= 0.0)) {
    throw ConfigError("config: invalid spin.* settings");
  }
  return s;
}

int cmd_phase_diagram(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RieszPotential pot = cfg.potential();
  const std::vector<double> rho = cfg.rho_grid();
  const std::vector<double> T = cfg.T_grid();
  const SolverConfig scfg = cfg.solver_config(rho.back(), T.back());
  SweepOptions opt;
  opt.workers = cfg.get_int("workers");
  opt.curve_points = cfg.get_int("sweep.curve_points");
  opt.curie_rho_points = cfg.get_int("sweep.curie_rho_points");
  opt.curie_T_tolerance = cfg.get_double("sweep.curie_T_tolerance");
  opt.spin = spin_options(cfg);
  const PhaseDiagram pd = sweep(pot, rho, T, scfg, opt);

  {
    std::ofstream os = ctx.open("phase_t_opt.csv");
    os << "rho";
    for (double t : T) os << "," << num(t);
    os << "\n";
    for (std::size_t i = 0; i < rho.size(); ++i) {
      os << num(rho[i]);
      for (std::size_t j = 0; j < T.size(); ++j) os << "," << num(pd.cells[i][j].t_opt);
      os << "\n";
    }
  }
  {
    std::ofstream os = ctx.open("phase_transitions.csv");
    os << "T,rho_c1,rho_c2\n";
    for (const auto& r : pd.transitions) {
      os << num(r.T) << "," << num(r.rho_c1) << "," << num(r.rho_c2) << "\n";
    }
  }
  {
    std::ofstream os = ctx.open("phase_contours.csv");
    os << "level,rho0,T0,rho1,T1\n";
    for (const auto& s : pd.contours) {
      os << num(s.level) << "," << num(s.rho0) << "," << num(s.T0) << "," << num(s.rho1) << ","
         << num(s.T1) << "\n";
    }
  }
  const std::size_t total = rho.size() * T.size();
  const bool too_many = pd.failed_cells * 10 > static_cast<int>(total);
  std::ostringstream report;
  report << "curie_temperature = " << num(pd.curie_temperature) << "\n"
         << "curie_bracketed = " << (pd.curie_bracketed ? "true" : "false") << "\n"
         << "failed_cells = " << pd.failed_cells << " / " << total << "\n";
  std::set<std::string> seen;
  for (std::size_t j = 0; j < T.size(); ++j) {
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const PhasePoint& p = pd.cells[i][j];
      if (p.failed && seen.insert(p.diagnostics + short_num(p.T)).second) {
        report << "failure at T = " << num(p.T) << ": " << p.diagnostics << "\n";
      }
    }
  }
  report << "status = " << (too_many ? "failed (more than 10% of cells)" : "ok") << "\n";
  {
    std::ofstream os = ctx.open("phase_report.txt");
    os << report.str();
  }
  std::cout << report.str();
  return too_many ? kNumericalFailure : kOk;
}

int cmd_mu_curve(const Context& ctx, bool dump) {
  const RunConfig& cfg = ctx.cfg;
  const RieszPotential pot = cfg.potential();
  const std::vector<double> temps = cfg.get_list("mu_curve.T");
  if (temps.empty()) throw ConfigError("config: mu_curve.T is empty");
  double T_max = 0.0;
  for (double t : temps) {
    if (!(t >= 0.0)) throw ConfigError("config: mu_curve.T entries must be >= 0");
    T_max = std::max(T_max, t);
  }
  const double lo = cfg.get_double("rho.min");
  const double hi = cfg.get_double("rho.max");
  const int n = cfg.get_int("mu_curve.rho_points");
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("config: empty or invalid density range");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  const SolverConfig scfg = cfg.solver_config(hi, T_max);
  MuCurveOptions opt;
  opt.mu_points = cfg.get_int("mu_curve.mu_points");

  for (double T : temps) {
    const std::vector<MuCurveRow> rows = mu_curve(pot, T, grid, scfg, opt);
    const std::string name = "mu_curve_T" + short_num(T) + ".csv";
    std::ofstream os = ctx.open(name);
    os << "mu,rho,branch\n";
    int counts[3] = {0, 0, 0};
    for (const auto& r : rows) {
      os << num(r.mu) << "," << num(r.rho) << "," << short_name(r.branch) << "\n";
      ++counts[static_cast<int>(r.branch)];
    }
    std::cout << name << ": " << rows.size() << " rows (min " << counts[0] << ", max "
              << counts[1] << ", middle " << counts[2] << ")\n";
    if (dump && T > 0.0 && !rows.empty()) {
      double mu = rows[rows.size() / 2].mu;
      for (const auto& r : rows) {
        if (r.branch == Branch::middle) {
          mu = r.mu;
          break;
        }
      }
      const NoSpinSolver solver(pot, scfg);
      std::vector<FixedPointResult> sols{solver.solve_extremal(mu, T, Branch::minimal),
                                         solver.solve_extremal(mu, T, Branch::maximal)};
      if ((sols[1].g - sols[0].g).maxCoeff() > 1e-6) {
        const FixedPointResult mid = solver.solve_middle(sols[0], sols[1]);
        if (mid.status == MiddleStatus::found) sols.push_back(mid);
      } else {
        sols.pop_back();
      }
      for (const auto& s : sols) {
        std::ofstream ds =
            ctx.open("dump_T" + short_num(T) + "_" + short_name(s.branch) + ".csv");
        write_dump(ds, solver, s);
      }
    }
  }
  return kOk;
}

int cmd_verify(const Context& ctx) {
  SuiteOptions opt;
  opt.seed = ctx.cfg.get_u64("seed");
  opt.quick = ctx.cfg.get_bool("quick");
  opt.haar_samples = ctx.cfg.get_int("verify.haar_samples");
  opt.flambda_samples = ctx.cfg.get_int("verify.flambda_samples");
  const SuiteReport rep = run_all_suites(opt);
  std::ostringstream text;
  for (const auto& r : rep.results) {
    text << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
  }
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(rep.sample_digest));
  text << "seed = " << opt.seed << ", sample digest = " << digest << "\n";
  std::cout << text.str();
  std::ofstream os = ctx.open("verify_report.txt");
  os << text.str();
  return rep.all_passed() ? kOk : kNumericalFailure;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Finite-temperature Hartree-Fock gas with Riesz interactions"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  unsigned long long seed = 0;
  bool quick = false;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Flat key=value configuration file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed for verification suites");
  app.add_flag("--quick", quick, "Run the fast subset");
  app.add_option("--set", overrides, "Override a configuration key (key=value)");

  bool machine = false;
  bool dump = false;
  auto* constants = app.add_subcommand("constants", "Print model constants");
  constants->add_flag("--machine", machine, "Emit key=value lines");
  auto* t0 = app.add_subcommand("t0", "Zero-temperature polarization scan");
  auto* phase = app.add_subcommand("phase-diagram", "Finite-temperature phase diagram sweep");
  auto* mu = app.add_subcommand("mu-curve", "Chemical potential versus density");
  mu->add_flag("--dump", dump, "Write solver dumps (k,g,V per node)");
  auto* verify = app.add_subcommand("verify", "Run the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  Context ctx;
  try {
    if (!config_path.empty()) ctx.cfg.load_file(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got " + kv);
      ctx.cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out_dir.empty()) ctx.cfg.set("out", out_dir);
    if (workers > 0) ctx.cfg.set("workers", std::to_string(workers));
    if (app.count("--seed") > 0) ctx.cfg.set("seed", std::to_string(seed));
    if (quick) ctx.cfg.set("quick", "true");
    if (ctx.cfg.get_int("workers") < 1) throw ConfigError("config: workers must be >= 1");
    ctx.cfg.get_u64("seed");
    ctx.cfg.get_bool("quick");
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (constants->parsed()) {
      ctx.command = "constants";
      return cmd_constants(ctx, machine);
    }
    if (t0->parsed()) {
      ctx.command = "t0";
      return cmd_t0(ctx);
    }
    if (phase->parsed()) {
      ctx.command = "phase-diagram";
      return cmd_phase_diagram(ctx);
    }
    if (mu->parsed()) {
      ctx.command = "mu-curve";
      return cmd_mu_curve(ctx, dump);
    }
    if (verify->parsed()) {
      ctx.command = "verify";
      return cmd_verify(ctx);
    }
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace hfgas::cli
