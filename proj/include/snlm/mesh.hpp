#pragma once

#include <array>
#include <vector>

namespace snlm {

// Cartesian mesh in 1D/2D stored as per-axis edge coordinates.  Uniform per
// axis in 2D; 1D additionally supports piecewise-uniform edge arrays (uniform
// sub-meshes joined at a shared face).
struct CartesianMesh {
  int dim = 1;
  std::vector<double> edges_x;  // size nx+1, strictly increasing
  std::vector<double> edges_y;  // size ny+1 (dim==2), else {0,1} placeholder

  int nx() const { return static_cast<int>(edges_x.size()) - 1; }
  int ny() const { return dim == 2 ? static_cast<int>(edges_y.size()) - 1 : 1; }
  int n_cells() const { return nx() * ny(); }
  int n_faces() const;

  int cell_index(int i, int j) const { return i + nx() * j; }
  int cell_ix(int p) const { return p % nx(); }
  int cell_iy(int p) const { return p / nx(); }

  double hx(int p) const { int i = cell_ix(p); return edges_x[i + 1] - edges_x[i]; }
  double hy(int p) const {
    if (dim == 1) return 1.0;
    int j = cell_iy(p);
    return edges_y[j + 1] - edges_y[j];
  }
  double h(int p, int axis) const { return axis == 0 ? hx(p) : hy(p); }
  double volume(int p) const { return dim == 1 ? hx(p) : hx(p) * hy(p); }
  std::array<double, 2> center(int p) const {
    int i = cell_ix(p), j = cell_iy(p);
    double cx = 0.5 * (edges_x[i] + edges_x[i + 1]);
    double cy = dim == 2 ? 0.5 * (edges_y[j] + edges_y[j + 1]) : 0.0;
    return {cx, cy};
  }
  std::array<double, 2> lower() const {
    return {edges_x.front(), dim == 2 ? edges_y.front() : 0.0};
  }
  std::array<double, 2> upper() const {
    return {edges_x.back(), dim == 2 ? edges_y.back() : 0.0};
  }

  // Neighbor cell index across the low/high face along axis, or -1 at the
  // domain boundary.
  int neighbor(int p, int axis, int side) const;

  bool uniform_axis(int axis) const;
};

CartesianMesh build_mesh_1d(double lo, double hi, int cells);
CartesianMesh build_mesh_2d(double lox, double hix, int nx, double loy, double hiy, int ny);
// Two uniform 1D sub-meshes joined at xm.
CartesianMesh build_mesh_1d_split(double lo, double xm, double hi, int cells_left,
                                  int cells_right);

// Topological cell order for a transport sweep along `omega`: every cell
// appears after its upwind neighbors.  Requires nonzero axis components.
std::vector<int> sweep_order(const CartesianMesh& mesh, const std::array<double, 2>& omega);

}  // namespace snlm
