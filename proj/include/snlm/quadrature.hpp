#pragma once

#include <array>
#include <string>
#include <vector>

namespace snlm {

// Discrete-ordinate set on S: the interval [-1,1] for dim==1, the projected
// unit disk for dim==2.  Weights are normalized so that sum(w) = 1, i.e. the
// 1/|S| factor of the angular average is absorbed into the weights.
struct AngularQuadrature {
  int dim = 1;
  std::vector<std::array<double, 2>> ordinates;  // [j] = (mu) or (Omega_x, Omega_y)
  std::vector<double> weights;

  int n_omega() const { return static_cast<int>(weights.size()); }
  double omega(int j, int axis) const { return ordinates[j][axis]; }
};

struct MomentReport {
  double zeroth_residual = 0.0;   // |sum w - 1|
  double first_residual = 0.0;    // ||sum w Omega||_2
  double second_residual = 0.0;   // ||sum w Omega x Omega - Id/3||_max
  bool centrally_symmetric = false;
  bool pass = false;
};

// Gauss-Legendre nodes on [-1,1] with weights scaled by 1/2.  n must be even:
// odd n places a node at mu = 0, which breaks upwinding.
AngularQuadrature gauss_legendre_slab(int n);

// Product rule on the unit sphere (Gauss-Legendre in the polar cosine,
// uniform azimuth offset by pi/n_azimuth), projected to (Omega_x, Omega_y).
AngularQuadrature product_sphere_disk(int n_polar, int n_azimuth);

// Build directly from points; validates positivity and nondegeneracy only.
AngularQuadrature quadrature_from_points(int dim,
                                         std::vector<std::array<double, 2>> ordinates,
                                         std::vector<double> weights);

MomentReport check_moments(const AngularQuadrature& q, double tol);

// Smallest |Omega_j . e_axis| over all ordinates and mesh axes.
double min_axis_component(const AngularQuadrature& q);

// CSV serialization (columns: ordinate components, weight).
std::string quadrature_csv(const AngularQuadrature& q);

}  // namespace snlm
