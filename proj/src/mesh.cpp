#include "snlm/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace snlm {

int CartesianMesh::n_faces() const {
  if (dim == 1) return nx() + 1;
  return (nx() + 1) * ny() + nx() * (ny() + 1);
}

int CartesianMesh::neighbor(int p, int axis, int side) const {
  int i = cell_ix(p), j = cell_iy(p);
  if (axis == 0) {
    i += side > 0 ? 1 : -1;
    if (i < 0 || i >= nx()) return -1;
  } else {
    j += side > 0 ? 1 : -1;
    if (j < 0 || j >= ny()) return -1;
  }
  return cell_index(i, j);
}

bool CartesianMesh::uniform_axis(int axis) const {
  const std::vector<double>& e = axis == 0 ? edges_x : edges_y;
  double h0 = e[1] - e[0];
  for (size_t k = 1; k + 1 < e.size(); ++k)
    if (std::abs((e[k + 1] - e[k]) - h0) > 1e-12 * std::abs(h0)) return false;
  return true;
}

namespace {
std::vector<double> linspace(double lo, double hi, int cells) {
  if (cells < 1 || !(hi > lo)) throw std::invalid_argument("degenerate mesh axis");
  std::vector<double> e(cells + 1);
  for (int k = 0; k <= cells; ++k) e[k] = lo + (hi - lo) * k / cells;
  e[cells] = hi;
  return e;
}
}  // namespace

CartesianMesh build_mesh_1d(double lo, double hi, int cells) {
  CartesianMesh m;
  m.dim = 1;
  m.edges_x = linspace(lo, hi, cells);
  m.edges_y = {0.0, 1.0};
  return m;
}

CartesianMesh build_mesh_2d(double lox, double hix, int nx, double loy, double hiy, int ny) {
  CartesianMesh m;
  m.dim = 2;
  m.edges_x = linspace(lox, hix, nx);
  m.edges_y = linspace(loy, hiy, ny);
  return m;
}

CartesianMesh build_mesh_1d_split(double lo, double xm, double hi, int cells_left,
                                  int cells_right) {
  if (!(lo < xm && xm < hi)) throw std::invalid_argument("split point outside domain");
  CartesianMesh m;
  m.dim = 1;
  m.edges_x = linspace(lo, xm, cells_left);
  std::vector<double> right = linspace(xm, hi, cells_right);
  m.edges_x.insert(m.edges_x.end(), right.begin() + 1, right.end());
  m.edges_y = {0.0, 1.0};
  return m;
}

std::vector<int> sweep_order(const CartesianMesh& mesh, const std::array<double, 2>& omega) {
  for (int a = 0; a < mesh.dim; ++a)
    if (omega[a] == 0.0)
      throw std::invalid_argument("sweep direction has a zero axis component");
  std::vector<int> order;
  order.reserve(mesh.n_cells());
  const int nx = mesh.nx(), ny = mesh.ny();
  for (int jj = 0; jj < ny; ++jj) {
    int j = (mesh.dim == 2 && omega[1] < 0) ? ny - 1 - jj : jj;
    for (int ii = 0; ii < nx; ++ii) {
      int i = omega[0] < 0 ? nx - 1 - ii : ii;
      order.push_back(mesh.cell_index(i, j));
    }
  }
  return order;
}

}  // namespace snlm
