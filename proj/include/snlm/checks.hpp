#pragma once

#include <string>
#include <vector>

#include "snlm/benchmarks.hpp"

namespace snlm {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured residual / quantity
  double tol = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& r : results) n += r.pass ? 0 : 1;
    return n;
  }
};

// Quadratic form of the slope-block operator evaluated from its variational
// identity (absorption volume term plus half-ordinate upwind face jumps)
// rather than from the assembled matrix; u1 is an isotropic slope field in
// the s1 layout.
double b11_quadratic_form(const BlockSystem& sys, const Vec& u1);

// Terms of the a-priori energy bound for alpha = 0 and sigma_a bounded away
// from zero.
struct EnergyBudget {
  double scattering_defect = 0.0;  // (1/eps) ||sigma_s^1/2 (psi - psi_bar)||^2
  double absorption = 0.0;         // (eps/2) ||sigma_a^1/2 psi||^2
  double jumps = 0.0;              // (1/2) [[psi]]^2
  double bound = 0.0;              // (eps/(2 delta_a)) ||q||^2

  double lhs() const { return scattering_defect + absorption + jumps; }
  bool holds(double slack = 1e-8) const { return lhs() <= bound * (1.0 + slack) + slack; }
};

EnergyBudget energy_budget(const BlockSystem& sys, const FluxSolution& sol);

// Residuals of the variational block equations satisfied by each scheme's
// solution (row 0 against all constants, row 1 against the scheme's slope
// test space), normalized by the right-hand side.
struct VariationalResiduals {
  double row0 = 0.0;
  double row1 = 0.0;
};

VariationalResiduals variational_residuals(const BlockSystem& sys, const FluxSolution& sol,
                                           const ReconstructionOps* recon = nullptr);

// The full property batch behind the `checks` subcommand.
CheckReport run_checks();

std::string format_report(const CheckReport& rep);

}  // namespace snlm
