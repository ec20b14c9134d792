#include "dense_oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

// 4-point Gauss-Legendre on [-1,1], written out rather than generated.
constexpr double kG4x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double kG4w[4] = {0.34785484513745385, 0.6521451548625461, 0.6521451548625461,
                            0.34785484513745385};

struct CellGeom {
  std::array<double, 2> c;
  double hx, hy;
};

double basis_eval(const snlm::LocalBasis& b, int r, double X, double Y) {
  return b.eval(r, X, Y);
}

}  // namespace

DenseSystem build(const snlm::ProblemSpec& problem, const snlm::CartesianMesh& mesh,
                  const snlm::AngularQuadrature& quad, snlm::SpaceKind space) {
  const int dim = mesh.dim;
  const snlm::LocalBasis basis = snlm::make_local_basis(space, dim);
  const snlm::CellCrossSections xs = snlm::sample_cross_sections(problem, mesh);

  DenseSystem ds;
  ds.dim = dim;
  ds.n_omega = quad.n_omega();
  ds.n_x = mesh.n_cells();
  ds.n_p = basis.n_p;
  const int N = ds.n_omega * ds.n_x * ds.n_p;
  const int S = ds.n_x * ds.n_p;
  ds.L = Eigen::MatrixXd::Zero(N, N);
  ds.M = Eigen::MatrixXd::Zero(N, S);
  ds.P = Eigen::MatrixXd::Zero(S, N);
  ds.q = Eigen::VectorXd::Zero(N);

  const double eps = problem.epsilon;

  auto geom = [&](int p) {
    return CellGeom{mesh.center(p), mesh.hx(p), dim == 2 ? mesh.hy(p) : 1.0};
  };

  for (int l = 0; l < ds.n_omega; ++l) {
    const double wl = quad.weights[l];
    const std::array<double, 2> om = quad.ordinates[l];
    for (int p = 0; p < ds.n_x; ++p) {
      const CellGeom g = geom(p);
      const double st = xs.sigma_s[p] / eps + eps * xs.sigma_a[p];
      const double jac = dim == 2 ? 0.25 * g.hx * g.hy : 0.5 * g.hx;

      // volume: -u (Omega . grad v) + sigma_t u v, plus the source moment
      const int ngy = dim == 2 ? 4 : 1;
      for (int gi = 0; gi < 4; ++gi)
        for (int gj = 0; gj < ngy; ++gj) {
          const double X = kG4x[gi];
          const double Y = dim == 2 ? kG4x[gj] : 0.0;
          const double wq = jac * kG4w[gi] * (dim == 2 ? kG4w[gj] : 1.0);
          const std::array<double, 2> x = {g.c[0] + 0.5 * g.hx * X,
                                           dim == 2 ? g.c[1] + 0.5 * g.hy * Y : 0.0};
          const double qv = problem.q ? problem.q(om, x) : 0.0;
          for (int r = 0; r < ds.n_p; ++r) {
            const double vr = basis_eval(basis, r, X, Y);
            ds.q[ds.idx(l, p, r)] += wl * wq * eps * qv * vr;
            double adv = om[0] * basis.deval(r, 0, X, Y) * (2.0 / g.hx);
            if (dim == 2) adv += om[1] * basis.deval(r, 1, X, Y) * (2.0 / g.hy);
            for (int rp = 0; rp < ds.n_p; ++rp) {
              const double ur = basis_eval(basis, rp, X, Y);
              ds.L(ds.idx(l, p, r), ds.idx(l, p, rp)) += wl * wq * (st * ur * vr - ur * adv);
              ds.M(ds.idx(l, p, r), ds.sidx(p, rp)) +=
                  wl * wq * (xs.sigma_s[p] / eps) * ur * vr;
            }
          }
        }

      // faces: upwind numerical trace, boundary inflow goes to the rhs
      for (int a = 0; a < dim; ++a) {
        if (om[a] == 0.0) throw std::runtime_error("ordinate grazes a mesh axis");
        for (int side = -1; side <= 1; side += 2) {
          const double nu = static_cast<double>(side);  // outward normal component
          const double flux = om[a] * nu;
          const int nb = mesh.neighbor(p, a, side);
          const double face_jac = dim == 2 ? 0.5 * (a == 0 ? g.hy : g.hx) : 1.0;
          const int nfq = dim == 2 ? 4 : 1;
          for (int gf = 0; gf < nfq; ++gf) {
            const double T = dim == 2 ? kG4x[gf] : 0.0;
            const double wf = face_jac * (dim == 2 ? kG4w[gf] : 1.0);
            // reference coordinates of the face point, seen from cell p
            const double Xp = a == 0 ? nu : T;
            const double Yp = a == 0 ? T : nu;
            if (flux > 0.0) {
              // outflow: trace from this cell
              for (int r = 0; r < ds.n_p; ++r)
                for (int rp = 0; rp < ds.n_p; ++rp)
                  ds.L(ds.idx(l, p, r), ds.idx(l, p, rp)) +=
                      wl * wf * flux * basis_eval(basis, rp, Xp, Yp) * basis_eval(basis, r, Xp, Yp);
            } else if (nb >= 0) {
              // inflow from the neighbor: its trace sits on its far side
              const double Xn = a == 0 ? -nu : T;
              const double Yn = a == 0 ? T : -nu;
              for (int r = 0; r < ds.n_p; ++r)
                for (int rp = 0; rp < ds.n_p; ++rp)
                  ds.L(ds.idx(l, p, r), ds.idx(l, nb, rp)) +=
                      wl * wf * flux * basis_eval(basis, rp, Xn, Yn) * basis_eval(basis, r, Xp, Yp);
            } else {
              // inflow through the domain boundary
              std::array<double, 2> x = {g.c[0], dim == 2 ? g.c[1] : 0.0};
              x[a] += 0.5 * (a == 0 ? g.hx : g.hy) * nu;
              if (dim == 2) x[1 - a] += 0.5 * (a == 0 ? g.hy : g.hx) * T;
              const double av = problem.alpha ? problem.alpha(om, x) : 0.0;
              for (int r = 0; r < ds.n_p; ++r)
                ds.q[ds.idx(l, p, r)] -= wl * wf * flux * av * basis_eval(basis, r, Xp, Yp);
            }
          }
        }
      }

      // weighted moments, coefficient-wise since scalar and angular functions
      // share the cell basis
      for (int r = 0; r < ds.n_p; ++r) ds.P(ds.sidx(p, r), ds.idx(l, p, r)) += wl;
    }
  }
  return ds;
}

Eigen::VectorXd solve_full(const DenseSystem& ds) {
  return Eigen::FullPivLU<Eigen::MatrixXd>(ds.transport()).solve(ds.q);
}

namespace {

// trial/test maps shared by the reduced solves
void lm_maps(const DenseSystem& ds, Eigen::MatrixXd& T, Eigen::MatrixXd& W) {
  const int N = ds.n_omega * ds.n_x * ds.n_p;
  const int ns = ds.n_p - 1;
  const int nu = ds.n_omega * ds.n_x + ds.n_x * ns;
  T = Eigen::MatrixXd::Zero(N, nu);
  W = Eigen::MatrixXd::Zero(nu, N);
  for (int l = 0; l < ds.n_omega; ++l)
    for (int p = 0; p < ds.n_x; ++p) {
      T(ds.idx(l, p, 0), l * ds.n_x + p) = 1.0;
      W(l * ds.n_x + p, ds.idx(l, p, 0)) = 1.0;
    }
  for (int p = 0; p < ds.n_x; ++p)
    for (int s = 0; s < ns; ++s) {
      const int col = ds.n_omega * ds.n_x + p * ns + s;
      for (int l = 0; l < ds.n_omega; ++l) {
        T(ds.idx(l, p, s + 1), col) = 1.0;
        // rows of L/M/q already carry w_l, so the shared test row is a sum
        W(col, ds.idx(l, p, s + 1)) = 1.0;
      }
    }
}

}  // namespace

Eigen::VectorXd solve_lm(const DenseSystem& ds, const snlm::AngularQuadrature& quad) {
  (void)quad;
  Eigen::MatrixXd T, W;
  lm_maps(ds, T, W);
  const Eigen::MatrixXd A = W * ds.transport() * T;
  const Eigen::VectorXd b = W * ds.q;
  return T * Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(b);
}

void reconstruction_matrix(const snlm::ProblemSpec& problem, const snlm::CartesianMesh& mesh,
                           const snlm::AngularQuadrature& quad, int stencil,
                           Eigen::MatrixXd& R, Eigen::VectorXd& r_alpha) {
  const int dim = mesh.dim;
  const int n_x = mesh.n_cells();
  const int n_omega = quad.n_omega();
  const int ns = (1 << dim) - 1;
  R = Eigen::MatrixXd::Zero(n_omega * n_x * ns, n_omega * n_x);
  r_alpha = Eigen::VectorXd::Zero(n_omega * n_x * ns);

  for (int l = 0; l < n_omega; ++l) {
    const std::array<double, 2> om = quad.ordinates[l];
    for (int p = 0; p < n_x; ++p)
      for (int a = 0; a < dim; ++a) {
        const int row = (l * n_x + p) * ns + a;  // cross term (2D slot 2) stays zero
        const int up_side = om[a] > 0.0 ? -1 : +1;
        const double half = 0.5 * mesh.h(p, a);
        const double x0 = mesh.center(p)[a];
        const int u1 = mesh.neighbor(p, a, up_side);
        if (u1 < 0) {
          // half-cell difference against the boundary value, slope pointing
          // from the boundary face into the cell
          std::array<double, 2> xf = mesh.center(p);
          xf[a] = x0 + up_side * half;
          const double av = problem.alpha ? problem.alpha(om, xf) : 0.0;
          // physical slope (c - alpha)/(x0 - xf); reference units: * half
          R(row, l * n_x + p) += half / (x0 - xf[a]);
          r_alpha[row] += -half / (x0 - xf[a]) * av;
          continue;
        }
        const double x1 = mesh.center(u1)[a];
        const int u2 = mesh.neighbor(u1, a, up_side);
        if (stencil == 3 && u2 >= 0) {
          // derivative at x0 of the Newton quadratic through the three values
          const double x2 = mesh.center(u2)[a];
          // f[x0,x1] + f[x0,x1,x2]*(x0-x1)
          const double d01 = 1.0 / (x0 - x1);
          // f[x0,x1,x2] = (f[x1,x2]-f[x0,x1])/(x2-x0)
          const double c0 = half * (d01 + (-d01) / (x2 - x0) * (x0 - x1));
          const double c1 =
              half * (-d01 + (1.0 / (x1 - x2) + d01) / (x2 - x0) * (x0 - x1));
          const double c2 = half * ((-1.0 / (x1 - x2)) / (x2 - x0) * (x0 - x1));
          R(row, l * n_x + p) += c0;
          R(row, l * n_x + u1) += c1;
          R(row, l * n_x + u2) += c2;
        } else {
          R(row, l * n_x + p) += half / (x0 - x1);
          R(row, l * n_x + u1) += -half / (x0 - x1);
        }
      }
  }
}

Eigen::VectorXd solve_rlm(const DenseSystem& ds, const snlm::ProblemSpec& problem,
                          const snlm::CartesianMesh& mesh, const snlm::AngularQuadrature& quad,
                          int stencil) {
  const int N = ds.n_omega * ds.n_x * ds.n_p;
  const int ns = ds.n_p - 1;
  Eigen::MatrixXd R;
  Eigen::VectorXd r_alpha;
  reconstruction_matrix(problem, mesh, quad, stencil, R, r_alpha);

  // deviation from the weighted ordinate mean on the slope block
  const int na1 = ds.n_omega * ds.n_x * ns;
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(na1, na1);
  for (int p = 0; p < ds.n_x; ++p)
    for (int s = 0; s < ns; ++s)
      for (int l = 0; l < ds.n_omega; ++l)
        for (int lp = 0; lp < ds.n_omega; ++lp)
          D((l * ds.n_x + p) * ns + s, (lp * ds.n_x + p) * ns + s) -= quad.weights[lp];

  Eigen::MatrixXd T, W;
  lm_maps(ds, T, W);
  // add the mean-free reconstructed slopes to each constant trial function
  const Eigen::MatrixXd DR = D * R;
  for (int col = 0; col < ds.n_omega * ds.n_x; ++col)
    for (int l = 0; l < ds.n_omega; ++l)
      for (int p = 0; p < ds.n_x; ++p)
        for (int s = 0; s < ns; ++s)
          T(ds.idx(l, p, s + 1), col) += DR((l * ds.n_x + p) * ns + s, col);

  Eigen::VectorXd t0 = Eigen::VectorXd::Zero(N);
  const Eigen::VectorXd dra = D * r_alpha;
  for (int l = 0; l < ds.n_omega; ++l)
    for (int p = 0; p < ds.n_x; ++p)
      for (int s = 0; s < ns; ++s)
        t0[ds.idx(l, p, s + 1)] = dra[(l * ds.n_x + p) * ns + s];

  const Eigen::MatrixXd Afull = ds.transport();
  const Eigen::MatrixXd A = W * Afull * T;
  const Eigen::VectorXd b = W * (ds.q - Afull * t0);
  return T * Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(b) + t0;
}

}  // namespace oracle
