#pragma once

#include <utility>
#include <vector>

#include "snlm/assembly.hpp"

namespace snlm {

// Slope-recovery configuration.  Suppression disables the reconstruction
// across listed faces: a suppressed near face zeroes the cell's slope for
// that axis, a suppressed far face degrades a three-cell stencil to two-cell.
struct ReconstructionSpec {
  int stencil = 2;             // upwind cells used: 2 (one-sided) or 3 (quadratic)
  bool auto_suppress = true;   // suppress across cross-section jumps
  std::vector<std::pair<int, double>> suppressed_faces;  // (axis, face coordinate)
};

// Linear-part stencil of the reconstructed slope coefficient (units of the
// per-axis linear basis function) plus the inflow-data contribution.
struct SlopeStencil {
  double c_self = 0.0;
  int up1 = -1;
  double c1 = 0.0;
  int up2 = -1;
  double c2 = 0.0;
  double r_alpha = 0.0;  // affine contribution from alpha at the boundary face
};

// Upwind slope reconstruction from cell averages, per ordinate and axis.
// apply_R is the linear part R; r_alpha carries the boundary data so that
// the reconstructed slopes are R psi0 + r_alpha.
class ReconstructionOps {
 public:
  ReconstructionOps(const BlockSystem& sys, ReconstructionSpec spec);

  const ReconstructionSpec& spec() const { return spec_; }
  const SlopeStencil& stencil(int l, int p, int axis) const {
    return sten_[(static_cast<size_t>(l) * n_x_ + p) * dim_ + axis];
  }

  Vec r_alpha() const { return r_alpha_; }
  Vec apply_R(const Vec& psi0) const;  // averages (a0) -> slopes (a1)
  Vec reconstruct(const Vec& psi0) const { return apply_R(psi0) + r_alpha_; }
  // deviation from the ordinate mean: (I - Sigma^T P1)(R psi0 + r_alpha)
  Vec apply_rstar(const Vec& psi0) const;

 private:
  const BlockSystem* sys_;
  ReconstructionSpec spec_;
  int dim_, n_x_;
  std::vector<SlopeStencil> sten_;
  Vec r_alpha_;
};

}  // namespace snlm
