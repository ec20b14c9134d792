#include "snlm/reconstruction.hpp"

#include <cmath>
#include <stdexcept>

namespace snlm {

namespace {

bool face_matches(const std::vector<std::pair<int, double>>& faces, int axis, double coord) {
  for (const auto& [a, c] : faces)
    if (a == axis && std::abs(c - coord) < 1e-10 * (1.0 + std::abs(c))) return true;
  return false;
}

}  // namespace

ReconstructionOps::ReconstructionOps(const BlockSystem& sys, ReconstructionSpec spec)
    : sys_(&sys), spec_(std::move(spec)), dim_(sys.mesh().dim), n_x_(sys.mesh().n_cells()) {
  if (spec_.stencil != 2 && spec_.stencil != 3)
    throw std::invalid_argument("reconstruction stencil must use 2 or 3 cells");
  const CartesianMesh& mesh = sys.mesh();
  const AngularQuadrature& quad = sys.quad();
  const CellCrossSections& xs = sys.cross_sections();
  const Layout& lay = sys.layout();

  sten_.assign(static_cast<size_t>(quad.n_omega()) * n_x_ * dim_, SlopeStencil{});
  r_alpha_ = Vec::Zero(lay.a1_dim());

  auto face_coord = [&](int p, int axis, int side) {
    if (axis == 0) return mesh.edges_x[mesh.cell_ix(p) + (side > 0 ? 1 : 0)];
    return mesh.edges_y[mesh.cell_iy(p) + (side > 0 ? 1 : 0)];
  };
  auto xs_jump = [&](int pa, int pb) {
    return xs.sigma_s[pa] != xs.sigma_s[pb] || xs.sigma_a[pa] != xs.sigma_a[pb];
  };

  for (int l = 0; l < quad.n_omega(); ++l) {
    const std::array<double, 2> omega = quad.ordinates[l];
    for (int p = 0; p < n_x_; ++p) {
      for (int a = 0; a < dim_; ++a) {
        SlopeStencil& st = sten_[(static_cast<size_t>(l) * n_x_ + p) * dim_ + a];
        const int side_up = omega[a] > 0.0 ? -1 : +1;
        const double half = 0.5 * mesh.h(p, a);
        const int u1 = mesh.neighbor(p, a, side_up);

        const double near_coord = face_coord(p, a, side_up);
        bool near_suppressed = face_matches(spec_.suppressed_faces, a, near_coord);
        if (spec_.auto_suppress && u1 >= 0 && xs_jump(p, u1)) near_suppressed = true;
        if (near_suppressed) continue;  // zero slope along this axis

        if (u1 < 0) {
          // half-cell difference against the inflow data at the face center:
          // slope = (value_at_cell - alpha)/(h/2) toward the upwind side
          st.c_self = -static_cast<double>(side_up);
          std::array<double, 2> xf = mesh.center(p);
          xf[a] = near_coord;
          st.r_alpha = side_up * sys.problem().alpha(omega, xf);
          r_alpha_[lay.a1(l, p, a)] = st.r_alpha;
          continue;
        }

        int u2 = mesh.neighbor(u1, a, side_up);
        bool use_three = spec_.stencil == 3 && u2 >= 0;
        if (use_three) {
          const double far_coord = face_coord(u1, a, side_up);
          if (face_matches(spec_.suppressed_faces, a, far_coord)) use_three = false;
          if (spec_.auto_suppress && xs_jump(u1, u2)) use_three = false;
        }

        const double x0 = mesh.center(p)[a];
        const double x1 = mesh.center(u1)[a];
        if (!use_three) {
          const double d = x0 - x1;
          st.c_self = half / d;
          st.up1 = u1;
          st.c1 = -half / d;
        } else {
          // derivative at x0 of the quadratic through (x0,u_p), (x1,u_1), (x2,u_2)
          const double x2 = mesh.center(u2)[a];
          st.c_self = half * (2.0 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2));
          st.up1 = u1;
          st.c1 = half * (x0 - x2) / ((x1 - x0) * (x1 - x2));
          st.up2 = u2;
          st.c2 = half * (x0 - x1) / ((x2 - x0) * (x2 - x1));
        }
      }
    }
  }
}

Vec ReconstructionOps::apply_R(const Vec& psi0) const {
  const Layout& lay = sys_->layout();
  if (psi0.size() != lay.a0_dim()) throw std::invalid_argument("apply_R size mismatch");
  Vec out = Vec::Zero(lay.a1_dim());
  for (int l = 0; l < lay.n_omega; ++l)
    for (int p = 0; p < n_x_; ++p)
      for (int a = 0; a < dim_; ++a) {
        const SlopeStencil& st = stencil(l, p, a);
        double v = st.c_self * psi0[lay.a0(l, p)];
        if (st.up1 >= 0) v += st.c1 * psi0[lay.a0(l, st.up1)];
        if (st.up2 >= 0) v += st.c2 * psi0[lay.a0(l, st.up2)];
        out[lay.a1(l, p, a)] = v;
      }
  return out;
}

Vec ReconstructionOps::apply_rstar(const Vec& psi0) const {
  Vec y = reconstruct(psi0);
  return y - sys_->sigma_copy(sys_->apply_P1(y));
}

}  // namespace snlm
