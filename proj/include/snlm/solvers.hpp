#pragma once

#include <array>
#include <optional>

#include "snlm/krylov.hpp"
#include "snlm/reconstruction.hpp"
#include "snlm/sweep.hpp"

namespace snlm {

struct FluxSolution {
  SpaceKind scheme = SpaceKind::P1;
  Layout lay;
  Vec psi0;  // cell averages per ordinate (a0 layout)
  Vec psi1;  // slope coefficients per ordinate (a1 layout, empty for P0)
  int iterations = 0;
  double residual = 0.0;
  double rhs_norm = 0.0;
  KrylovStatus status = KrylovStatus::Converged;
  std::vector<double> history;

  double coef(int l, int p, int r) const {
    return r == 0 ? psi0[lay.a0(l, p)] : psi1[lay.a1(l, p, r - 1)];
  }
};

// Ordinate-averaged fields in the scalar (s_full) layout.
struct ScalarMoments {
  Vec scalar;                    // scalar flux coefficients
  std::array<Vec, 2> current;    // current J coefficients per component
};

FluxSolution solve_sndg(const BlockSystem& sys, const SolverConfig& cfg);
FluxSolution solve_lmdg(const BlockSystem& sys, const SolverConfig& cfg);
FluxSolution solve_rlmdg(const BlockSystem& sys, const ReconstructionOps& recon,
                         const SolverConfig& cfg);

// Assembles the system for `space` and dispatches on it; `recon` applies to
// RLM only.
FluxSolution solve_transport(const ProblemSpec& problem, const CartesianMesh& mesh,
                             const AngularQuadrature& quad, SpaceKind space,
                             const SolverConfig& cfg,
                             const ReconstructionSpec& recon = ReconstructionSpec{});

ScalarMoments derive_moments(const BlockSystem& sys, const FluxSolution& sol);

// Pointwise evaluation of a DG coefficient field in the scalar layout.
int locate_cell(const CartesianMesh& mesh, const std::array<double, 2>& x);
double eval_field(const CartesianMesh& mesh, const LocalBasis& basis, const Vec& coef,
                  const std::array<double, 2>& x);
// Per-ordinate evaluation of the angular flux.
double eval_angular(const CartesianMesh& mesh, const LocalBasis& basis,
                    const FluxSolution& sol, int l, const std::array<double, 2>& x);

// Residual of the full variational system L psi = M P psi + Q for a solution
// expanded to the full layout (consistency diagnostics).
double full_system_residual(const BlockSystem& sys, const FluxSolution& sol);

}  // namespace snlm
