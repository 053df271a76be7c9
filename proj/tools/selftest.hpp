#ifndef FRFTSIM_SELFTEST_HPP
#define FRFTSIM_SELFTEST_HPP

#include <string>
#include <vector>

namespace frftsim {

/// Deliberate bugs for validating that the selftest catches them. KernelPhase
/// corrupts the transform phase inside the eigenfunctions group; CovTranspose
/// mis-transposes the rotation in the no_correlation group. Each fault is
/// scoped to its group so the other groups still pass.
enum class FaultMode { None, KernelPhase, CovTranspose };

struct GroupResult {
  std::string name;
  bool passed;
  std::string detail;  // empty when passed
};

/// Runs the invariant groups (additivity, unitarity, eigenfunctions, lohmann,
/// no_correlation, analytic_numeric) with fixed seeds. Deterministic.
std::vector<GroupResult> run_selftest(FaultMode fault);

}  // namespace frftsim

#endif
