#pragma once

#include <Eigen/Dense>

namespace snlm {

using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

// Flat indexing for the block vectors.  Angular vectors are ordinate-major so
// each ordinate's coefficients are contiguous for sweeping:
//   full  (l,p,r): (l*n_x + p)*n_p + r        dim n_omega*n_x*n_p
//   psi0  (l,p):    l*n_x + p                 dim n_omega*n_x
//   psi1  (l,p,s):  (l*n_x + p)*n_s + s       dim n_omega*n_x*n_s,  s = r-1
// Scalar (ordinate-summed) counterparts drop the leading l.
struct Layout {
  int n_omega = 0;
  int n_x = 0;
  int n_p = 1;

  int n_s() const { return n_p - 1; }
  int full_dim() const { return n_omega * n_x * n_p; }
  int a0_dim() const { return n_omega * n_x; }
  int a1_dim() const { return n_omega * n_x * n_s(); }
  int s_full_dim() const { return n_x * n_p; }
  int s0_dim() const { return n_x; }
  int s1_dim() const { return n_x * n_s(); }

  int full(int l, int p, int r) const { return (l * n_x + p) * n_p + r; }
  int a0(int l, int p) const { return l * n_x + p; }
  int a1(int l, int p, int s) const { return (l * n_x + p) * n_s() + s; }
  int sf(int p, int r) const { return p * n_p + r; }
  int s1(int p, int s) const { return p * n_s() + s; }
};

enum class Projector { Pi0, Pi1 };

// Orthogonal projections V_h -> V_{h,0} / V_{h,1} as coefficient masks on the
// full layout.
inline Vec project(Projector sel, const Layout& lay, const Vec& v) {
  if (v.size() != lay.full_dim()) throw std::invalid_argument("projection layout mismatch");
  Vec out = Vec::Zero(v.size());
  for (int l = 0; l < lay.n_omega; ++l)
    for (int p = 0; p < lay.n_x; ++p)
      for (int r = 0; r < lay.n_p; ++r)
        if ((r == 0) == (sel == Projector::Pi0)) out[lay.full(l, p, r)] = v[lay.full(l, p, r)];
  return out;
}

// Split a full-layout vector into its constant/slope blocks and back.
inline void split_blocks(const Layout& lay, const Vec& full, Vec& v0, Vec& v1) {
  v0.resize(lay.a0_dim());
  v1.resize(lay.a1_dim());
  for (int l = 0; l < lay.n_omega; ++l)
    for (int p = 0; p < lay.n_x; ++p) {
      v0[lay.a0(l, p)] = full[lay.full(l, p, 0)];
      for (int s = 0; s < lay.n_s(); ++s) v1[lay.a1(l, p, s)] = full[lay.full(l, p, s + 1)];
    }
}

inline Vec join_blocks(const Layout& lay, const Vec& v0, const Vec& v1) {
  Vec full(lay.full_dim());
  for (int l = 0; l < lay.n_omega; ++l)
    for (int p = 0; p < lay.n_x; ++p) {
      full[lay.full(l, p, 0)] = v0[lay.a0(l, p)];
      for (int s = 0; s < lay.n_s(); ++s) full[lay.full(l, p, s + 1)] = v1[lay.a1(l, p, s)];
    }
  return full;
}

}  // namespace snlm
