#include "snlm/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace snlm {

SweepPlan::SweepPlan(const BlockSystem& sys, SweepVariant variant,
                     const ReconstructionOps* recon)
    : sys_(&sys), variant_(variant), recon_(recon) {
  if (variant == SweepVariant::Ltilde00 && recon == nullptr)
    throw std::invalid_argument("reconstructed sweep needs reconstruction data");
  const AngularQuadrature& quad = sys.quad();
  order_.resize(quad.n_omega());
  for (int l = 0; l < quad.n_omega(); ++l)
    order_[l] = sweep_order(sys.mesh(), quad.ordinates[l]);
}

Vec SweepPlan::solve(const Vec& rhs) const {
  const Layout& lay = sys_->layout();
  const int dim = sys_->mesh().dim;
  const int np = lay.n_p;

  if (variant_ == SweepVariant::L_full) {
    if (rhs.size() != lay.full_dim()) throw std::invalid_argument("sweep rhs size mismatch");
    Vec x(lay.full_dim());
    double local[4];
    for (int l = 0; l < lay.n_omega; ++l) {
      const double winv = 1.0 / sys_->quad().weights[l];
      for (int p : order_[l]) {
        const LocalOps& op = sys_->local_ops(l, p);
        for (int r = 0; r < np; ++r) local[r] = rhs[lay.full(l, p, r)] * winv;
        for (int a = 0; a < dim; ++a) {
          int pu = sys_->upwind_neighbor(l, p, a);
          if (pu < 0) continue;
          for (int r = 0; r < np; ++r)
            for (int rp = 0; rp < np; ++rp)
              local[r] -= op.U[a][r * 4 + rp] * x[lay.full(l, pu, rp)];
        }
        for (int r = 0; r < np; ++r) {
          double acc = 0.0;
          for (int rp = 0; rp < np; ++rp) acc += op.Tinv[r * 4 + rp] * local[rp];
          x[lay.full(l, p, r)] = acc;
        }
      }
    }
    return x;
  }

  if (rhs.size() != lay.a0_dim()) throw std::invalid_argument("sweep rhs size mismatch");
  Vec x(lay.a0_dim());

  if (variant_ == SweepVariant::L00) {
    for (int l = 0; l < lay.n_omega; ++l) {
      const double winv = 1.0 / sys_->quad().weights[l];
      for (int p : order_[l]) {
        const LocalOps& op = sys_->local_ops(l, p);
        double acc = rhs[lay.a0(l, p)] * winv;
        for (int a = 0; a < dim; ++a) {
          int pu = sys_->upwind_neighbor(l, p, a);
          if (pu < 0) continue;
          acc -= op.U[a][0] * x[lay.a0(l, pu)];
        }
        x[lay.a0(l, p)] = acc / op.T[0];
      }
    }
    return x;
  }

  // Ltilde00: the trial function carries reconstructed slopes, so each cell
  // couples to the upwind averages both directly and through the slopes of
  // itself and its upwind neighbors.  The self part of the reconstruction
  // moves into the diagonal; slopes are stored as the march progresses.
  std::vector<double> slopes(static_cast<size_t>(lay.n_x) * dim);
  for (int l = 0; l < lay.n_omega; ++l) {
    const double winv = 1.0 / sys_->quad().weights[l];
    for (int p : order_[l]) {
      const LocalOps& op = sys_->local_ops(l, p);
      double acc = rhs[lay.a0(l, p)] * winv;
      double denom = op.T[0];
      for (int a = 0; a < dim; ++a) {
        int pu = sys_->upwind_neighbor(l, p, a);
        if (pu < 0) continue;
        acc -= op.U[a][0] * x[lay.a0(l, pu)];
        // neighbor slope coefficients (cross terms are never reconstructed)
        for (int s = 0; s < dim; ++s)
          acc -= op.U[a][s + 1] * slopes[static_cast<size_t>(pu) * dim + s];
      }
      for (int a = 0; a < dim; ++a) {
        const SlopeStencil& st = recon_->stencil(l, p, a);
        denom += op.T[a + 1] * st.c_self;
        double rest = 0.0;
        if (st.up1 >= 0) rest += st.c1 * x[lay.a0(l, st.up1)];
        if (st.up2 >= 0) rest += st.c2 * x[lay.a0(l, st.up2)];
        acc -= op.T[a + 1] * rest;
        slopes[static_cast<size_t>(p) * dim + a] = rest;  // self part added below
      }
      if (denom == 0.0) throw std::runtime_error("singular reconstructed diagonal");
      const double xp = acc / denom;
      x[lay.a0(l, p)] = xp;
      for (int a = 0; a < dim; ++a)
        slopes[static_cast<size_t>(p) * dim + a] += recon_->stencil(l, p, a).c_self * xp;
    }
  }
  return x;
}

Vec invert_transport_block(const SweepPlan& plan, const Vec& rhs) { return plan.solve(rhs); }

}  // namespace snlm
