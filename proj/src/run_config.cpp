#include "hfgas/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hfgas {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d{
      {"dimension", "3"},
      {"potential", "coulomb"},
      {"grid.nodes", "512"},
      {"solver.tolerance", "1e-10"},
      {"solver.max_iterations", "200000"},
      {"solver.damping", "0.5"},
      {"solver.beads", "32"},
      {"solver.string_iterations", "400"},
      {"solver.density_rtol", "1e-8"},
      {"rho.min", "1e-4"},
      {"rho.max", "1.6e-3"},
      {"rho.points", "20"},
      {"rho.spacing", "linear"},
      {"rho.list", ""},
      {"T.min", "0.003"},
      {"T.max", "0.035"},
      {"T.points", "20"},
      {"T.list", ""},
      {"t0.curve_rho", ""},
      {"t0.t_points", "101"},
      {"mu_curve.T", "0,0.01,0.03"},
      {"mu_curve.mu_points", "200"},
      {"mu_curve.rho_points", "60"},
      {"sweep.curve_points", "240"},
      {"sweep.curie_rho_points", "40"},
      {"sweep.curie_T_tolerance", "1e-4"},
      {"spin.coarse_points", "26"},
      {"spin.t_tolerance", "1e-7"},
      {"spin.para_tolerance", "1e-3"},
      {"verify.haar_samples", "10000"},
      {"verify.flambda_samples", "50"},
      {"workers", "1"},
      {"seed", "12345"},
      {"quick", "false"},
      {"out", "."},
  };
  return d;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("config: " + key + " expects a number, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> spaced(double lo, double hi, int n, bool logarithmic) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(logarithmic ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return out;
}

}  // namespace

const char* version() { return HFGAS_VERSION; }

RunConfig::RunConfig() : values_(defaults()) {}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  parse(in, path);
}

void RunConfig::parse(std::istream& in, const std::string& origin) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected key = value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second = value;
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: unknown key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const { return to_double(key, get(key)); }

int RunConfig::get_int(const std::string& key) const {
  const double v = get_double(key);
  if (v != std::floor(v) || std::abs(v) > 2e9) {
    throw ConfigError("config: " + key + " expects an integer");
  }
  return static_cast<int>(v);
}

unsigned long long RunConfig::get_u64(const std::string& key) const {
  const std::string t = trim(get(key));
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("config: " + key + " expects a non-negative integer");
  }
  return v;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " expects true or false");
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  if (trim(get(key)).empty()) return out;
  for (const auto& item : split(get(key), ',')) out.push_back(to_double(key, item));
  return out;
}

void RunConfig::write_header(std::ostream& os) const {
  os << "# hfgas version = " << version() << "\n";
  for (const auto& [k, v] : values_) os << "# " << k << " = " << v << "\n";
}

RieszPotential RunConfig::potential() const {
  const int d = get_int("dimension");
  const std::string spec = trim(get("potential"));
  RieszPotential pot;
  if (spec == "coulomb") {
    if (d != 3) throw ConfigError("config: potential=coulomb requires dimension = 3");
    pot = RieszPotential::coulomb();
  } else {
    std::vector<std::pair<double, double>> reduced;
    pot.dimension = d;
    for (const auto& term : split(spec, ',')) {
      const auto parts = split(term, ':');
      if (parts.size() != 3 || (parts[0] != "riesz" && parts[0] != "reduced")) {
        throw ConfigError("config: potential term '" + term +
                          "' must be riesz:ALPHA:S or reduced:LAMBDA:S");
      }
      const double a = to_double("potential", parts[1]);
      const double s = to_double("potential", parts[2]);
      if (parts[0] == "reduced") {
        reduced.emplace_back(a, s);
      } else {
        if (!(s > 0.0 && s < d)) throw ConfigError("config: need 0 < s < d in '" + term + "'");
        pot.terms.push_back({a * riesz_normalization(d, s), s});
      }
    }
    if (!reduced.empty()) {
      try {
        const RieszPotential r = RieszPotential::from_reduced_exchange(d, reduced);
        pot.terms.insert(pot.terms.end(), r.terms.begin(), r.terms.end());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
  }
  try {
    pot.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return pot;
}

SolverConfig RunConfig::solver_config(double rho_max, double T_max) const {
  SolverConfig cfg;
  cfg.grid = GridSpec::for_problem(rho_max, T_max, get_int("grid.nodes"));
  cfg.tolerance = get_double("solver.tolerance");
  cfg.max_iterations = get_int("solver.max_iterations");
  cfg.damping = get_double("solver.damping");
  cfg.beads = get_int("solver.beads");
  cfg.string_iterations = get_int("solver.string_iterations");
  cfg.density_rtol = get_double("solver.density_rtol");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::vector<double> RunConfig::rho_grid() const {
  std::vector<double> list = get_list("rho.list");
  if (list.empty()) {
    const double lo = get_double("rho.min");
    const double hi = get_double("rho.max");
    const int n = get_int("rho.points");
    const std::string spacing = get("rho.spacing");
    if (spacing != "linear" && spacing != "log") {
      throw ConfigError("config: rho.spacing must be linear or log");
    }
    if (n < 1 || !(lo > 0.0) || !(hi >= lo) || (n > 1 && !(hi > lo))) {
      throw ConfigError("config: empty or invalid density range");
    }
    list = spaced(lo, hi, n, spacing == "log");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!(list[i] > 0.0) || (i > 0 && !(list[i] > list[i - 1]))) {
      throw ConfigError("config: densities must be positive and increasing");
    }
  }
  return list;
}

std::vector<double> RunConfig::T_grid() const {
  std::vector<double> list = get_list("T.list");
  if (list.empty()) {
    const double lo = get_double("T.min");
    const double hi = get_double("T.max");
    const int n = get_int("T.points");
    if (n < 1 || !(lo > 0.0) || !(hi >= lo) || (n > 1 && !(hi > lo))) {
      throw ConfigError("config: empty or invalid temperature range");
    }
    list = spaced(lo, hi, n, false);
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!(list[i] > 0.0) || (i > 0 && !(list[i] > list[i - 1]))) {
      throw ConfigError("config: temperatures must be positive and increasing");
    }
  }
  return list;
}

}  // namespace hfgas
