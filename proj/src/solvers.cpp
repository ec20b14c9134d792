#include "snlm/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snlm {

namespace {

void fill_stats(FluxSolution& sol, const KrylovResult& kr) {
  sol.iterations = kr.iterations;
  sol.residual = kr.residual;
  sol.rhs_norm = kr.rhs_norm;
  sol.status = kr.status;
  sol.history = kr.history;
}

}  // namespace

FluxSolution solve_sndg(const BlockSystem& sys, const SolverConfig& cfg) {
  if (is_reduced(sys.space()))
    throw std::invalid_argument("standard solve requires a P0/P1/Q1 space");
  const Layout& lay = sys.layout();
  SweepPlan plan(sys, SweepVariant::L_full);
  Vec q = sys.rhs_full();
  Vec linv_q = plan.solve(q);
  Vec b = sys.apply_P(linv_q);

  auto apply = [&](const Vec& phi) -> Vec {
    return phi - sys.apply_P(plan.solve(sys.apply_M(phi)));
  };
  KrylovResult kr = gmres(apply, b, cfg, &b);

  Vec psi = plan.solve(sys.apply_M(kr.x) + q);
  FluxSolution sol;
  sol.scheme = sys.space();
  sol.lay = lay;
  split_blocks(lay, psi, sol.psi0, sol.psi1);
  fill_stats(sol, kr);
  return sol;
}

FluxSolution solve_lmdg(const BlockSystem& sys, const SolverConfig& cfg) {
  const Layout& lay = sys.layout();
  const int n0 = lay.s0_dim(), n1 = lay.s1_dim();
  SweepPlan plan(sys, SweepVariant::L00);
  Vec q0, q1;
  sys.rhs_blocks(q0, q1);

  Vec g0 = plan.solve(q0 - sys.apply_L01(sys.sigma_copy(sys.b11_solve(sys.sigma_sum(q1)))));

  Vec b(n0 + n1);
  b.head(n0) = sys.apply_P0(g0);
  b.tail(n1) = sys.sigma_sum(sys.apply_L10(g0));

  auto apply = [&](const Vec& v) -> Vec {
    Vec x0 = v.head(n0), x1 = v.tail(n1);
    Vec z = plan.solve(sys.apply_M0(x0) + sys.apply_L01(sys.sigma_copy(x1)));
    Vec out(n0 + n1);
    out.head(n0) = x0 - sys.apply_P0(z);
    out.tail(n1) = sys.b11_mult(x1) - sys.sigma_sum(sys.apply_L10(z));
    return out;
  };
  KrylovResult kr = gmres(apply, b, cfg, &b);

  Vec x0 = kr.x.head(n0), x1 = kr.x.tail(n1);
  Vec psi0 = plan.solve(sys.apply_M0(x0) + sys.apply_L01(sys.sigma_copy(x1))) + g0;
  Vec phi1 = sys.b11_solve(sys.sigma_sum(q1 - sys.apply_L10(psi0)));

  FluxSolution sol;
  sol.scheme = SpaceKind::LM;
  sol.lay = lay;
  sol.psi0 = std::move(psi0);
  sol.psi1 = sys.sigma_copy(phi1);
  fill_stats(sol, kr);
  return sol;
}

FluxSolution solve_rlmdg(const BlockSystem& sys, const ReconstructionOps& recon,
                         const SolverConfig& cfg) {
  const Layout& lay = sys.layout();
  const int n0 = lay.s0_dim(), n1 = lay.s1_dim();
  SweepPlan plan(sys, SweepVariant::Ltilde00, &recon);

  auto deviation = [&](const Vec& v1) -> Vec {  // (I - Sigma^T P1) v1
    return v1 - sys.sigma_copy(sys.apply_P1(v1));
  };
  auto apply_l10t = [&](const Vec& v0) -> Vec {  // L10 + L11 (I - Sigma^T P1) R
    return sys.apply_L10(v0) + sys.apply_L11(deviation(recon.apply_R(v0)));
  };

  Vec q0, q1;
  sys.rhs_blocks(q0, q1);
  Vec w = deviation(recon.r_alpha());
  Vec qt0 = q0 - sys.apply_L01(w);
  Vec qt1 = q1 - sys.apply_L11(w);

  Vec g = plan.solve(qt0 - sys.apply_L01(sys.sigma_copy(sys.b11_solve(sys.sigma_sum(qt1)))));

  Vec b(n0 + n1);
  b.head(n0) = sys.apply_P0(g);
  b.tail(n1) = sys.sigma_sum(apply_l10t(g)) + sys.b11_mult(sys.apply_P1(recon.apply_R(g)));

  auto apply = [&](const Vec& v) -> Vec {
    Vec x0 = v.head(n0), x1 = v.tail(n1);
    Vec z = plan.solve(sys.apply_M0(x0) + sys.apply_L01(sys.sigma_copy(x1)));
    Vec out(n0 + n1);
    out.head(n0) = x0 - sys.apply_P0(z);
    out.tail(n1) = sys.b11_mult(x1) - sys.sigma_sum(apply_l10t(z)) -
                   sys.b11_mult(sys.apply_P1(recon.apply_R(z)));
    return out;
  };
  KrylovResult kr = gmres(apply, b, cfg, &b);

  Vec x0 = kr.x.head(n0), x1 = kr.x.tail(n1);
  Vec psi0 = plan.solve(sys.apply_M0(x0) + sys.apply_L01(sys.sigma_copy(x1))) + g;
  Vec phi1 = sys.b11_solve(sys.sigma_sum(qt1 - apply_l10t(psi0)));

  FluxSolution sol;
  sol.scheme = SpaceKind::RLM;
  sol.lay = lay;
  sol.psi1 = sys.sigma_copy(phi1) + deviation(recon.reconstruct(psi0));
  sol.psi0 = std::move(psi0);
  fill_stats(sol, kr);
  return sol;
}

FluxSolution solve_transport(const ProblemSpec& problem, const CartesianMesh& mesh,
                             const AngularQuadrature& quad, SpaceKind space,
                             const SolverConfig& cfg, const ReconstructionSpec& recon) {
  BlockSystem sys(problem, mesh, quad, space);
  switch (space) {
    case SpaceKind::LM:
      return solve_lmdg(sys, cfg);
    case SpaceKind::RLM: {
      ReconstructionOps ops(sys, recon);
      return solve_rlmdg(sys, ops, cfg);
    }
    default:
      return solve_sndg(sys, cfg);
  }
}

ScalarMoments derive_moments(const BlockSystem& sys, const FluxSolution& sol) {
  const Layout& lay = sol.lay;
  ScalarMoments m;
  m.scalar = Vec::Zero(lay.s_full_dim());
  m.current[0] = Vec::Zero(lay.s_full_dim());
  m.current[1] = Vec::Zero(lay.s_full_dim());
  const double einv = 1.0 / sys.problem().epsilon;
  for (int l = 0; l < lay.n_omega; ++l) {
    const double w = sys.quad().weights[l];
    for (int p = 0; p < lay.n_x; ++p)
      for (int r = 0; r < lay.n_p; ++r) {
        const double v = w * sol.coef(l, p, r);
        m.scalar[lay.sf(p, r)] += v;
        for (int c = 0; c < sys.mesh().dim; ++c)
          m.current[c][lay.sf(p, r)] += einv * sys.quad().omega(l, c) * v;
      }
  }
  return m;
}

int locate_cell(const CartesianMesh& mesh, const std::array<double, 2>& x) {
  auto axis_index = [](const std::vector<double>& e, double v) {
    auto it = std::upper_bound(e.begin(), e.end(), v);
    int i = static_cast<int>(it - e.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(e.size()) - 2);
  };
  int i = axis_index(mesh.edges_x, x[0]);
  int j = mesh.dim == 2 ? axis_index(mesh.edges_y, x[1]) : 0;
  return mesh.cell_index(i, j);
}

double eval_field(const CartesianMesh& mesh, const LocalBasis& basis, const Vec& coef,
                  const std::array<double, 2>& x) {
  int p = locate_cell(mesh, x);
  auto c = mesh.center(p);
  double X = (x[0] - c[0]) / (0.5 * mesh.hx(p));
  double Y = mesh.dim == 2 ? (x[1] - c[1]) / (0.5 * mesh.hy(p)) : 0.0;
  double v = 0.0;
  for (int r = 0; r < basis.n_p; ++r) v += coef[p * basis.n_p + r] * basis.eval(r, X, Y);
  return v;
}

double eval_angular(const CartesianMesh& mesh, const LocalBasis& basis,
                    const FluxSolution& sol, int l, const std::array<double, 2>& x) {
  int p = locate_cell(mesh, x);
  auto c = mesh.center(p);
  double X = (x[0] - c[0]) / (0.5 * mesh.hx(p));
  double Y = mesh.dim == 2 ? (x[1] - c[1]) / (0.5 * mesh.hy(p)) : 0.0;
  double v = 0.0;
  for (int r = 0; r < basis.n_p; ++r) v += sol.coef(l, p, r) * basis.eval(r, X, Y);
  return v;
}

double full_system_residual(const BlockSystem& sys, const FluxSolution& sol) {
  const Layout& lay = sol.lay;
  Vec psi1 = sol.psi1.size() ? sol.psi1 : Vec(Vec::Zero(lay.a1_dim()));
  Vec psi = join_blocks(lay, sol.psi0, psi1);
  Vec r = sys.apply_L(psi) - sys.apply_M(sys.apply_P(psi)) - sys.rhs_full();
  return r.norm();
}

}  // namespace snlm
