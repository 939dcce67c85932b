#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfgas/kernels.hpp"
#include "hfgas/radial_solver.hpp"

namespace hfgas {

/// Bad key, malformed value or inconsistent setting. Maps to a usage error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* version();

/// Flat key=value run configuration. Every key has a default; files and
/// command-line flags may only set known keys.
class RunConfig {
 public:
  RunConfig();

  /// Reads `key = value` lines; '#' starts a comment, blank lines are skipped.
  void load_file(const std::string& path);
  void parse(std::istream& in, const std::string& origin = "<input>");
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  unsigned long long get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  /// Writes "# key = value" for every key, preceded by the version line.
  void write_header(std::ostream& os) const;

  /// `potential` is coulomb, or comma-separated riesz:ALPHA:S terms, or
  /// reduced:LAMBDA:S terms (exchange ratio relative to kappa(d)).
  RieszPotential potential() const;
  SolverConfig solver_config(double rho_max, double T_max) const;
  /// rho.list if set, otherwise rho.points values spaced per rho.spacing.
  std::vector<double> rho_grid() const;
  std::vector<double> T_grid() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace hfgas
