#pragma once

#include <string>

#include <Eigen/Sparse>

#include "snlm/layout.hpp"
#include "snlm/mesh.hpp"
#include "snlm/problem.hpp"

namespace snlm {

// Continuous-space limit solvers: the classical continuous-Galerkin form and
// the cell-averaged-gradient (projected) form.  Both use the nodal linear
// (1D) / bilinear (2D) space with zero trace on the domain boundary.
enum class DiffusionForm { CG, Projected };

DiffusionForm parse_diffusion_form(const std::string& name);

struct DiffusionSolution {
  CartesianMesh mesh;
  DiffusionForm form = DiffusionForm::CG;
  Vec nodal;  // (nx+1) x (ny+1) nodal values, boundary entries zero

  double eval(const std::array<double, 2>& x) const;
};

DiffusionSolution solve_diffusion_limit(DiffusionForm form, const ProblemSpec& problem,
                                        const CartesianMesh& mesh);

// Full (un-eliminated) nodal matrix of the chosen form, for row inspection.
Eigen::SparseMatrix<double> diffusion_matrix(DiffusionForm form, const ProblemSpec& problem,
                                             const CartesianMesh& mesh);

// 3x3 neighborhood of the assembled projected-form row at interior node
// (i, j) of a uniform square mesh, and the closed-form finite-difference
// stencil it must equal (scaled by h^2).
std::array<std::array<double, 3>, 3> stencil_row(const CartesianMesh& mesh,
                                                 const ProblemSpec& problem, int i, int j);
std::array<std::array<double, 3>, 3> stencil_formula(double h, double sigma_s, double sigma_a);

}  // namespace snlm
