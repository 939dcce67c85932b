#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfgas {

/// A deterministic quadrature failed to reach its requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Fixed-point iteration stopped without meeting the residual tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residual_history() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// The monotone iteration produced a non-monotone step beyond the allowed
/// slack. This signals an inconsistent discretization, not bad input.
class MonotonicityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A (mu, density) sample recorded while bracketing a chemical potential.
struct DensitySample {
  double mu;
  double density;
};

/// The requested density is not reachable on the requested branch.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, std::vector<DensitySample> table)
      : std::runtime_error(what), table_(std::move(table)) {}
  const std::vector<DensitySample>& table() const { return table_; }

 private:
  std::vector<DensitySample> table_;
};

}  // namespace hfgas
