#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hfgas {

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;  ///< sample counts, or the violating sample
};

struct SuiteOptions {
  std::uint64_t seed = 12345;
  int haar_samples = 10000;
  int flambda_samples = 50;
  /// Smaller samples and a single coarse solver case.
  bool quick = false;
};

struct SuiteReport {
  std::vector<PropertyResult> results;
  /// FNV-1a digest of every random sample drawn; equal seeds give equal digests.
  std::uint64_t sample_digest = 0;

  bool all_passed() const;
};

SuiteReport run_rearrangement_suite(const SuiteOptions& opt);
SuiteReport run_flambda_suite(const SuiteOptions& opt);
SuiteReport run_entropy_suite();
/// Monotone, sandwich, residual, radial-decrease and exchange-bound checks
/// on canned (mu, T) cases of the 3D Coulomb gas.
SuiteReport run_solver_suite(const SuiteOptions& opt);

SuiteReport run_all_suites(const SuiteOptions& opt);

}  // namespace hfgas
