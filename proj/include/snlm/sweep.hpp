#pragma once

#include <vector>

#include "snlm/assembly.hpp"
#include "snlm/reconstruction.hpp"

namespace snlm {

// Which transport block the sweep inverts: the full per-ordinate operator L,
// its constant-coefficient diagonal block L00, or the reconstructed block
// L00 + L01 R whose reconstruction feedback is folded into the march.
enum class SweepVariant { L_full, L00, Ltilde00 };

class SweepPlan {
 public:
  SweepPlan(const BlockSystem& sys, SweepVariant variant,
            const ReconstructionOps* recon = nullptr);

  SweepVariant variant() const { return variant_; }
  // Direct solve of (block) x = rhs by downwind marching; rhs is in the full
  // layout for L_full and the a0 layout otherwise.
  Vec solve(const Vec& rhs) const;

 private:
  const BlockSystem* sys_;
  SweepVariant variant_;
  const ReconstructionOps* recon_;
  std::vector<std::vector<int>> order_;  // [ordinate][k]
};

Vec invert_transport_block(const SweepPlan& plan, const Vec& rhs);

}  // namespace snlm
