#include "snlm/diffusion.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace snlm {

namespace {

constexpr double kG2 = 0.5773502691896257645;
constexpr std::array<double, 2> kGauss2x = {-kG2, kG2};
constexpr std::array<double, 2> kGauss2w = {1.0, 1.0};

constexpr std::array<double, 4> kGauss4x = {-0.8611363115940525752, -0.3399810435848562648,
                                            0.3399810435848562648, 0.8611363115940525752};
constexpr std::array<double, 4> kGauss4w = {0.3478548451374538574, 0.6521451548839258726,
                                            0.6521451548839258726, 0.3478548451374538574};

// Local corner signs in the node order (i,j), (i+1,j), (i,j+1), (i+1,j+1).
constexpr std::array<std::array<int, 2>, 4> kCorner = {{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}};

int n_nodes_x(const CartesianMesh& mesh) { return mesh.nx() + 1; }
int n_nodes(const CartesianMesh& mesh) {
  return mesh.dim == 1 ? mesh.nx() + 1 : (mesh.nx() + 1) * (mesh.ny() + 1);
}
int node_id(const CartesianMesh& mesh, int i, int j) {
  return mesh.dim == 1 ? i : i + n_nodes_x(mesh) * j;
}

bool boundary_node(const CartesianMesh& mesh, int i, int j) {
  if (i == 0 || i == mesh.nx()) return true;
  if (mesh.dim == 2 && (j == 0 || j == mesh.ny())) return true;
  return false;
}

void local_matrices_1d(DiffusionForm, double h, double ss, double sa,
                       std::array<std::array<double, 4>, 4>& a) {
  // Linear elements: the cell-averaged gradient equals the exact gradient,
  // so both forms coincide.
  double k = 1.0 / (3.0 * ss * h);
  double m = sa * h;
  a[0][0] = k + m / 3.0;
  a[0][1] = -k + m / 6.0;
  a[1][0] = a[0][1];
  a[1][1] = a[0][0];
}

void local_matrices_2d(DiffusionForm form, double hx, double hy, double ss, double sa,
                       std::array<std::array<double, 4>, 4>& a) {
  for (auto& row : a) row.fill(0.0);
  double jac = 0.25 * hx * hy;
  if (form == DiffusionForm::CG) {
    for (double t : kGauss2x)
      for (double u : kGauss2x) {
        std::array<std::array<double, 2>, 4> grad;
        for (int c = 0; c < 4; ++c) {
          double sx = kCorner[c][0], sy = kCorner[c][1];
          grad[c][0] = (2.0 / hx) * 0.25 * sx * (1.0 + sy * u);
          grad[c][1] = (2.0 / hy) * 0.25 * sy * (1.0 + sx * t);
        }
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d)
            a[c][d] += jac * (grad[c][0] * grad[d][0] + grad[c][1] * grad[d][1]) / (3.0 * ss);
      }
  } else {
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d) {
        double gx = kCorner[c][0] / (2.0 * hx) * (kCorner[d][0] / (2.0 * hx));
        double gy = kCorner[c][1] / (2.0 * hy) * (kCorner[d][1] / (2.0 * hy));
        a[c][d] += hx * hy * (gx + gy) / (3.0 * ss);
      }
  }
  for (double t : kGauss2x)
    for (double u : kGauss2x) {
      std::array<double, 4> phi;
      for (int c = 0; c < 4; ++c)
        phi[c] = 0.25 * (1.0 + kCorner[c][0] * t) * (1.0 + kCorner[c][1] * u);
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) a[c][d] += jac * sa * phi[c] * phi[d];
    }
}

struct NodalSystem {
  Eigen::SparseMatrix<double> mat;
  Vec rhs;
};

NodalSystem assemble(DiffusionForm form, const ProblemSpec& problem, const CartesianMesh& mesh) {
  CellCrossSections xs = sample_cross_sections(problem, mesh);
  int nn = n_nodes(mesh);
  std::vector<Eigen::Triplet<double>> trips;
  Vec rhs = Vec::Zero(nn);
  std::array<double, 2> omega0 = {0.0, 0.0};

  for (int p = 0; p < mesh.n_cells(); ++p) {
    double ss = xs.sigma_s[p];
    double sa = xs.sigma_a[p];
    if (ss <= 0.0) throw std::runtime_error("limit equation requires sigma_s > 0");
    int i = mesh.cell_ix(p), j = mesh.cell_iy(p);
    auto c = mesh.center(p);
    double hx = mesh.hx(p), hy = mesh.hy(p);

    if (mesh.dim == 1) {
      std::array<std::array<double, 4>, 4> a;
      local_matrices_1d(form, hx, ss, sa, a);
      std::array<int, 2> ids = {node_id(mesh, i, 0), node_id(mesh, i + 1, 0)};
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) trips.emplace_back(ids[r], ids[s], a[r][s]);
      for (int g = 0; g < 4; ++g) {
        double x = c[0] + 0.5 * hx * kGauss4x[g];
        double w = 0.5 * hx * kGauss4w[g];
        double qv = problem.q(omega0, {x, 0.0});
        rhs[ids[0]] += w * qv * 0.5 * (1.0 - kGauss4x[g]);
        rhs[ids[1]] += w * qv * 0.5 * (1.0 + kGauss4x[g]);
      }
    } else {
      std::array<std::array<double, 4>, 4> a;
      local_matrices_2d(form, hx, hy, ss, sa, a);
      std::array<int, 4> ids = {node_id(mesh, i, j), node_id(mesh, i + 1, j),
                                node_id(mesh, i, j + 1), node_id(mesh, i + 1, j + 1)};
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) trips.emplace_back(ids[r], ids[s], a[r][s]);
      for (int gx = 0; gx < 4; ++gx)
        for (int gy = 0; gy < 4; ++gy) {
          double x = c[0] + 0.5 * hx * kGauss4x[gx];
          double y = c[1] + 0.5 * hy * kGauss4x[gy];
          double w = 0.25 * hx * hy * kGauss4w[gx] * kGauss4w[gy];
          double qv = problem.q(omega0, {x, y});
          for (int cc = 0; cc < 4; ++cc) {
            double phi = 0.25 * (1.0 + kCorner[cc][0] * kGauss4x[gx]) *
                         (1.0 + kCorner[cc][1] * kGauss4x[gy]);
            rhs[ids[cc]] += w * qv * phi;
          }
        }
    }
  }

  NodalSystem sys;
  sys.mat.resize(nn, nn);
  sys.mat.setFromTriplets(trips.begin(), trips.end());
  sys.rhs = std::move(rhs);
  return sys;
}

}  // namespace

DiffusionForm parse_diffusion_form(const std::string& name) {
  if (name == "cg") return DiffusionForm::CG;
  if (name == "projected") return DiffusionForm::Projected;
  throw std::invalid_argument("unknown limit form: " + name);
}

Eigen::SparseMatrix<double> diffusion_matrix(DiffusionForm form, const ProblemSpec& problem,
                                             const CartesianMesh& mesh) {
  return assemble(form, problem, mesh).mat;
}

DiffusionSolution solve_diffusion_limit(DiffusionForm form, const ProblemSpec& problem,
                                        const CartesianMesh& mesh) {
  NodalSystem full = assemble(form, problem, mesh);
  int nn = n_nodes(mesh);
  int nnx = n_nodes_x(mesh), nny = mesh.dim == 2 ? mesh.ny() + 1 : 1;

  std::vector<Index> compact(nn, -1);
  std::vector<Index> expand;
  for (int j = 0; j < nny; ++j)
    for (int i = 0; i < nnx; ++i) {
      if (boundary_node(mesh, i, j)) continue;
      int id = node_id(mesh, i, j);
      compact[id] = static_cast<Index>(expand.size());
      expand.push_back(id);
    }
  Index nred = static_cast<Index>(expand.size());
  if (nred == 0) throw std::runtime_error("mesh has no interior nodes");

  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < full.mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(full.mat, k); it; ++it) {
      Index r = compact[it.row()], cidx = compact[it.col()];
      if (r >= 0 && cidx >= 0) trips.emplace_back(r, cidx, it.value());
    }
  Eigen::SparseMatrix<double> mat(nred, nred);
  mat.setFromTriplets(trips.begin(), trips.end());
  Vec rhs(nred);
  for (Index k = 0; k < nred; ++k) rhs[k] = full.rhs[expand[k]];

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(mat);
  if (chol.info() != Eigen::Success) throw std::runtime_error("limit matrix factorization failed");
  Vec red = chol.solve(rhs);

  DiffusionSolution sol;
  sol.mesh = mesh;
  sol.form = form;
  sol.nodal = Vec::Zero(nn);
  for (Index k = 0; k < nred; ++k) sol.nodal[expand[k]] = red[k];
  return sol;
}

double DiffusionSolution::eval(const std::array<double, 2>& x) const {
  auto locate = [](const std::vector<double>& edges, double v) {
    int n = static_cast<int>(edges.size()) - 1;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    int i = static_cast<int>(it - edges.begin()) - 1;
    return std::clamp(i, 0, n - 1);
  };
  int i = locate(mesh.edges_x, x[0]);
  double tx = (x[0] - mesh.edges_x[i]) / (mesh.edges_x[i + 1] - mesh.edges_x[i]);
  if (mesh.dim == 1) {
    return (1.0 - tx) * nodal[node_id(mesh, i, 0)] + tx * nodal[node_id(mesh, i + 1, 0)];
  }
  int j = locate(mesh.edges_y, x[1]);
  double ty = (x[1] - mesh.edges_y[j]) / (mesh.edges_y[j + 1] - mesh.edges_y[j]);
  double v00 = nodal[node_id(mesh, i, j)], v10 = nodal[node_id(mesh, i + 1, j)];
  double v01 = nodal[node_id(mesh, i, j + 1)], v11 = nodal[node_id(mesh, i + 1, j + 1)];
  return (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 + (1.0 - tx) * ty * v01 +
         tx * ty * v11;
}

std::array<std::array<double, 3>, 3> stencil_row(const CartesianMesh& mesh,
                                                 const ProblemSpec& problem, int i, int j) {
  if (mesh.dim != 2) throw std::invalid_argument("stencil_row expects a 2D mesh");
  if (i <= 0 || i >= mesh.nx() || j <= 0 || j >= mesh.ny())
    throw std::invalid_argument("stencil_row expects an interior node");
  Eigen::SparseMatrix<double> mat = diffusion_matrix(DiffusionForm::Projected, problem, mesh);
  std::array<std::array<double, 3>, 3> out{};
  int row = node_id(mesh, i, j);
  for (int oj = -1; oj <= 1; ++oj)
    for (int oi = -1; oi <= 1; ++oi)
      out[oj + 1][oi + 1] = mat.coeff(row, node_id(mesh, i + oi, j + oj));
  return out;
}

std::array<std::array<double, 3>, 3> stencil_formula(double h, double sigma_s, double sigma_a) {
  double d = 1.0 / (3.0 * sigma_s * 2.0 * h * h);
  std::array<std::array<double, 3>, 3> out{};
  out[0][0] = -d + sigma_a / 36.0;
  out[0][2] = -d + sigma_a / 36.0;
  out[2][0] = -d + sigma_a / 36.0;
  out[2][2] = -d + sigma_a / 36.0;
  out[0][1] = sigma_a / 9.0;
  out[2][1] = sigma_a / 9.0;
  out[1][0] = sigma_a / 9.0;
  out[1][2] = sigma_a / 9.0;
  out[1][1] = 4.0 * d + 4.0 * sigma_a / 9.0;
  return out;
}

}  // namespace snlm
