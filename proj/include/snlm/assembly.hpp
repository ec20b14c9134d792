#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "snlm/basis.hpp"
#include "snlm/layout.hpp"
#include "snlm/mesh.hpp"
#include "snlm/problem.hpp"
#include "snlm/quadrature.hpp"

namespace snlm {

// Cell-local matrices for one ordinate and one cell signature
// (hx, hy, sigma_s, sigma_a).  Row = test index r, col = trial index r'.
// T is the diagonal (own-cell) block; U[a] couples to the upwind neighbor
// across axis a.  Entries carry the w_l factor NOT included; the ordinate
// weight multiplies rows at apply time.
struct LocalOps {
  int n_p = 1;
  std::array<double, 16> T{};
  std::array<double, 16> Tinv{};
  std::array<std::array<double, 16>, 2> U{};
  double at(const std::array<double, 16>& m, int r, int rp) const { return m[r * 4 + rp]; }
};

struct DofReport {
  long long per_cell = 0;      // unknowns per spatial cell
  long long solution_dim = 0;  // stored coefficients
  long long reduced_dim = 0;   // Krylov system size
};

DofReport count_dofs(SpaceKind space, int dim, long long n_omega, long long n_cells);

// Assembled transport operator in block form.  The full matrix
// L Psi = M P Psi + Q is never stored; block applications are matrix-free
// with per-(ordinate, signature) local matrices.  B11 is stored sparse and
// factored once.
class BlockSystem {
 public:
  BlockSystem(ProblemSpec problem, CartesianMesh mesh, AngularQuadrature quad, SpaceKind space);

  const CartesianMesh& mesh() const { return mesh_; }
  const AngularQuadrature& quad() const { return quad_; }
  const ProblemSpec& problem() const { return problem_; }
  const CellCrossSections& cross_sections() const { return xs_; }
  SpaceKind space() const { return space_; }
  const Layout& layout() const { return lay_; }
  const LocalBasis& basis() const { return basis_; }
  const LocalOps& local_ops(int l, int cell) const { return ops_[l][cell_sig_[cell]]; }
  int upwind_neighbor(int l, int cell, int axis) const;
  double mass(int p, int r) const { return mass_[p * lay_.n_p + r]; }
  double sigma_t(int p) const {
    return xs_.sigma_s[p] / problem_.epsilon + problem_.epsilon * xs_.sigma_a[p];
  }
  double sigma_s_over_eps(int p) const { return xs_.sigma_s[p] / problem_.epsilon; }

  // full-layout operators
  Vec apply_L(const Vec& v) const;
  Vec apply_M(const Vec& phi) const;  // scalar full -> angular full
  Vec apply_P(const Vec& v) const;    // angular full -> scalar full

  // block operators (constant block 0, slope block 1)
  Vec apply_L00(const Vec& v0) const;
  Vec apply_L01(const Vec& v1) const;
  Vec apply_L10(const Vec& v0) const;
  Vec apply_L11(const Vec& v1) const;
  Vec apply_M0(const Vec& x0) const;
  Vec apply_M1(const Vec& x1) const;
  Vec apply_P0(const Vec& v0) const;
  Vec apply_P1(const Vec& v1) const;

  // unweighted ordinate sum / copy on slope blocks
  Vec sigma_sum(const Vec& v1) const;
  Vec sigma_copy(const Vec& x1) const;

  // right-hand side
  Vec rhs_full() const;
  void rhs_blocks(Vec& q0, Vec& q1) const;

  // slope-block operator B11 = Sigma L11 Sigma^T - Sigma M1
  const Eigen::SparseMatrix<double>& b11() const { return b11_; }
  Vec b11_mult(const Vec& x1) const { return b11_ * x1; }
  Vec b11_solve(const Vec& x1) const;
  bool b11_spd() const { return b11_spd_; }

 private:
  void build_local_ops();
  void build_b11();

  ProblemSpec problem_;
  CartesianMesh mesh_;
  AngularQuadrature quad_;
  SpaceKind space_;
  Layout lay_;
  LocalBasis basis_;
  CellCrossSections xs_;
  std::vector<int> cell_sig_;
  std::vector<std::array<double, 4>> signatures_;
  std::vector<std::vector<LocalOps>> ops_;  // [ordinate][signature]
  std::vector<double> mass_;
  Eigen::SparseMatrix<double> b11_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> b11_ldlt_;
  std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> b11_lu_;
  bool b11_spd_ = false;
};

// Dense realization of a named block by unit-vector application, for oracle
// comparisons and the triplet dump.
Eigen::MatrixXd dense_block(const BlockSystem& sys, const std::string& name);
std::string triplet_dump(const Eigen::MatrixXd& m);

}  // namespace snlm
