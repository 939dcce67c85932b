#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "hfgas/kernels.hpp"
#include "hfgas/phase_diagram.hpp"
#include "hfgas/property_suites.hpp"
#include "hfgas/radial_solver.hpp"
#include "hfgas/run_config.hpp"
#include "hfgas/verification.hpp"
#include "hfgas/zero_temperature.hpp"

namespace py = pybind11;
using namespace hfgas;

namespace {

SolverConfig make_config(double rho_max, double T_max, int nodes, double tolerance) {
  SolverConfig cfg;
  cfg.grid = GridSpec::for_problem(rho_max, T_max, nodes);
  cfg.tolerance = tolerance;
  cfg.validate();
  return cfg;
}

py::dict solution_dict(const NoSpinSolver& s, const FixedPointResult& r) {
  py::dict d;
  d["k"] = s.grid().nodes();
  d["g"] = r.g;
  d["V"] = r.V;
  d["mu"] = r.mu;
  d["T"] = r.temperature;
  d["rho"] = r.density;
  d["free_energy"] = r.free_energy;
  d["branch"] = short_name(r.branch);
  d["iterations"] = r.iterations;
  d["residual"] = r.residual;
  d["radially_decreasing"] = s.radially_decreasing(r.g);
  return d;
}

Branch parse_branch(const std::string& b) {
  if (b == "min" || b == "minimal") return Branch::minimal;
  if (b == "max" || b == "maximal") return Branch::maximal;
  if (b == "middle") return Branch::middle;
  throw std::invalid_argument("branch must be min, max or middle");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hartree-Fock electron gas: zero-temperature model, radial solver, phase diagram";
  m.attr("__version__") = version();

  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<RieszTerm>(m, "RieszTerm")
      .def_readonly("kappa", &RieszTerm::kappa)
      .def_readonly("s", &RieszTerm::s);

  py::class_<RieszPotential>(m, "Potential")
      .def_static("coulomb", &RieszPotential::coulomb)
      .def_static("riesz", &RieszPotential::riesz, py::arg("d"), py::arg("s"),
                  py::arg("alpha") = 1.0)
      .def_static("from_reduced_exchange", &RieszPotential::from_reduced_exchange, py::arg("d"),
                  py::arg("terms"))
      .def_readonly("dimension", &RieszPotential::dimension)
      .def_readonly("terms", &RieszPotential::terms)
      .def("__call__", &RieszPotential::operator(), py::arg("k"));

  m.def("dirac_constant", &dirac_constant, py::arg("d"), py::arg("s"));
  m.def("kinetic_coefficient", &kinetic_coefficient, py::arg("d"));
  m.def("exchange_coefficient", &exchange_coefficient, py::arg("d"), py::arg("s"));
  m.def("thomas_fermi_constant", &thomas_fermi_constant, py::arg("d"));

  m.def("nospin_energy_T0", &nospin_energy_T0, py::arg("potential"), py::arg("rho"));
  m.def("mu_T0", &mu_T0, py::arg("potential"), py::arg("rho"));
  m.def("polarization_energy",
        py::overload_cast<const RieszPotential&, double, double>(&polarization_energy),
        py::arg("potential"), py::arg("rho"), py::arg("t"));

  m.def(
      "classify_transition",
      [](const RieszPotential& pot) {
        const TransitionReport rep = classify_transition(pot);
        py::dict d;
        d["kind"] = to_string(rep.kind);
        py::dict rho;
        for (const auto& c : rep.critical_densities) rho[py::str(c.label)] = c.rho;
        d["critical_densities"] = rho;
        d["p"] = rep.shape.p;
        d["q"] = rep.shape.q;
        return d;
      },
      py::arg("potential"));

  m.def(
      "scan_polarization",
      [](const RieszPotential& pot, const std::vector<double>& rho, int workers) {
        const auto scan = scan_polarization(pot, rho, workers);
        const auto events = detect_transitions(ZeroTemperatureModel(pot), scan);
        py::list points, transitions;
        for (const auto& p : scan) {
          points.append(py::make_tuple(p.rho, p.t, p.energy, to_string(p.tag)));
        }
        for (const auto& e : events) {
          transitions.append(py::make_tuple(e.rho, to_string(e.kind), e.label));
        }
        return py::make_tuple(points, transitions);
      },
      py::arg("potential"), py::arg("rho"), py::arg("workers") = 1,
      "Returns (points, transitions); points are (rho, t, energy, phase).");

  py::class_<NoSpinSolver>(m, "Solver")
      .def(py::init([](const RieszPotential& pot, double rho_max, double T_max, int nodes,
                       double tolerance) {
             return NoSpinSolver(pot, make_config(rho_max, T_max, nodes, tolerance));
           }),
           py::arg("potential"), py::arg("rho_max") = 1.6e-3, py::arg("T_max") = 0.035,
           py::arg("nodes") = 512, py::arg("tolerance") = 1e-10)
      .def_property_readonly("k", [](const NoSpinSolver& s) { return s.grid().nodes(); })
      .def(
          "solve_extremal",
          [](const NoSpinSolver& s, double mu, double T, const std::string& branch) {
            FixedPointResult r;
            {
              py::gil_scoped_release release;
              r = s.solve_extremal(mu, T, parse_branch(branch));
            }
            return solution_dict(s, r);
          },
          py::arg("mu"), py::arg("T"), py::arg("branch") = "min")
      .def(
          "solve_middle",
          [](const NoSpinSolver& s, double mu, double T) -> py::object {
            FixedPointResult mid;
            {
              py::gil_scoped_release release;
              const FixedPointResult lo = s.solve_extremal(mu, T, Branch::minimal);
              const FixedPointResult hi = s.solve_extremal(mu, T, Branch::maximal);
              mid = s.solve_middle(lo, hi);
            }
            if (mid.status != MiddleStatus::found) return py::none();
            return solution_dict(s, mid);
          },
          py::arg("mu"), py::arg("T"))
      .def(
          "solve_at_density",
          [](const NoSpinSolver& s, double rho, double T, const std::string& branch) {
            FixedPointResult r;
            {
              py::gil_scoped_release release;
              r = branch == "best" ? best_solution_at_density(s, rho, T)
                                   : s.solve_at_density(rho, T, parse_branch(branch));
            }
            return solution_dict(s, r);
          },
          py::arg("rho"), py::arg("T"), py::arg("branch") = "best");

  m.def("exchange_bound", &exchange_bound, py::arg("potential"), py::arg("rho"));
  m.def("free_gas_density", &free_gas_density, py::arg("mu"), py::arg("T"));
  m.def("fermi_entropy", &fermi_entropy, py::arg("t"));

  py::class_<NoSpinCurve>(m, "NoSpinCurve")
      .def(py::init([](const NoSpinSolver& s, double T, double rho_lo, double rho_hi,
                       int points) {
             py::gil_scoped_release release;
             return NoSpinCurve::build(s, T, rho_lo, rho_hi, points);
           }),
           py::arg("solver"), py::arg("T"), py::arg("rho_lo") = 1e-8,
           py::arg("rho_hi") = 1.6e-3, py::arg("points") = 240)
      .def_property_readonly("T", &NoSpinCurve::temperature)
      .def("energy", &NoSpinCurve::energy, py::arg("rho"))
      .def("mu", &NoSpinCurve::mu, py::arg("rho"))
      .def(
          "spin_energy",
          [](const NoSpinCurve& c, double rho) {
            const PhasePoint p = spin_energy(c, rho);
            py::dict d;
            d["t_opt"] = p.t_opt;
            d["energy"] = p.energy_opt;
            d["energy_para"] = p.energy_para;
            d["energy_ferro"] = p.energy_ferro;
            d["phase"] = to_string(p.classification);
            return d;
          },
          py::arg("rho"));

  m.def(
      "phase_diagram",
      [](const RieszPotential& pot, const std::vector<double>& rho,
         const std::vector<double>& T, int workers, int curve_points, int nodes) {
        SweepOptions opt;
        opt.workers = workers;
        opt.curve_points = curve_points;
        PhaseDiagram pd;
        {
          py::gil_scoped_release release;
          pd = sweep(pot, rho, T, make_config(rho.back(), T.back(), nodes, 1e-10), opt);
        }
        py::array_t<double> t_opt({rho.size(), T.size()});
        auto view = t_opt.mutable_unchecked<2>();
        for (std::size_t i = 0; i < rho.size(); ++i) {
          for (std::size_t j = 0; j < T.size(); ++j) view(i, j) = pd.cells[i][j].t_opt;
        }
        py::list transitions;
        for (const auto& r : pd.transitions) {
          transitions.append(py::make_tuple(r.T, r.rho_c1, r.rho_c2));
        }
        py::dict d;
        d["t_opt"] = t_opt;
        d["curie_temperature"] = pd.curie_temperature;
        d["curie_bracketed"] = pd.curie_bracketed;
        d["failed_cells"] = pd.failed_cells;
        d["transitions"] = transitions;
        return d;
      },
      py::arg("potential"), py::arg("rho"), py::arg("T"), py::arg("workers") = 1,
      py::arg("curve_points") = 240, py::arg("nodes") = 512);

  m.def(
      "mu_curve",
      [](const RieszPotential& pot, double T, const std::vector<double>& rho, int mu_points,
         int nodes) {
        MuCurveOptions opt;
        opt.mu_points = mu_points;
        std::vector<MuCurveRow> rows;
        {
          py::gil_scoped_release release;
          rows = mu_curve(pot, T, rho, make_config(rho.back(), std::max(T, 1e-3), nodes, 1e-10),
                          opt);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(r.mu, r.rho, short_name(r.branch)));
        return out;
      },
      py::arg("potential"), py::arg("T"), py::arg("rho"), py::arg("mu_points") = 200,
      py::arg("nodes") = 512);

  m.def("flambda_minimizer", &flambda_minimizer, py::arg("p"), py::arg("q"), py::arg("lambda_"));
  m.def(
      "haar_su2",
      [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return Eigen::Matrix2cd(haar_su2(rng).m);
      },
      py::arg("seed"));
  m.def(
      "rearrangement_gap",
      [](const Eigen::Vector2d& d1, const Eigen::Vector2d& d2, const Eigen::Matrix2cd& u) {
        return rearrangement_gap(SpinMatrix::diag(d1[0], d1[1]), SpinMatrix::diag(d2[0], d2[1]),
                                 SpinMatrix::classify(u));
      },
      py::arg("d1"), py::arg("d2"), py::arg("u"));
  m.def(
      "verify",
      [](std::uint64_t seed, bool quick) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.quick = quick;
        SuiteReport rep;
        {
          py::gil_scoped_release release;
          rep = run_all_suites(opt);
        }
        py::list out;
        for (const auto& r : rep.results) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return py::make_tuple(out, rep.sample_digest);
      },
      py::arg("seed") = 12345, py::arg("quick") = false);
}
