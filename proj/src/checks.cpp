#include "snlm/checks.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "snlm/diffusion.hpp"

namespace snlm {

namespace {

constexpr std::array<double, 2> kGauss2x = {-0.5773502691896257645, 0.5773502691896257645};

constexpr std::array<double, 4> kGauss4x = {-0.8611363115940525752, -0.3399810435848562648,
                                            0.3399810435848562648, 0.8611363115940525752};
constexpr std::array<double, 4> kGauss4w = {0.3478548451374538574, 0.6521451548839258726,
                                            0.6521451548839258726, 0.3478548451374538574};

// Visit every mesh face once: cells (lo, hi) adjacent across the face along
// `axis`, -1 outside the domain.
template <class F>
void for_each_face(const CartesianMesh& mesh, F&& f) {
  int nx = mesh.nx(), ny = mesh.ny();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      int lo = i > 0 ? mesh.cell_index(i - 1, j) : -1;
      int hi = i < nx ? mesh.cell_index(i, j) : -1;
      f(0, lo, hi);
    }
  if (mesh.dim == 2)
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j <= ny; ++j) {
        int lo = j > 0 ? mesh.cell_index(i, j - 1) : -1;
        int hi = j < ny ? mesh.cell_index(i, j) : -1;
        f(1, lo, hi);
      }
}

double face_half_width(const CartesianMesh& mesh, int axis, int lo, int hi) {
  if (mesh.dim == 1) return 0.5;  // point face, measure 1 after the x2 factor
  int p = hi >= 0 ? hi : lo;
  return 0.5 * mesh.h(p, 1 - axis);
}

}  // namespace

double b11_quadratic_form(const BlockSystem& sys, const Vec& u1) {
  const auto& mesh = sys.mesh();
  const auto& quad = sys.quad();
  const auto& basis = sys.basis();
  const auto& lay = sys.layout();
  int n_s = lay.n_s();
  if (u1.size() != lay.s1_dim()) throw std::invalid_argument("quadratic form layout mismatch");

  double eps = sys.problem().epsilon;
  double total = 0.0;
  for (int p = 0; p < mesh.n_cells(); ++p) {
    double sa = sys.cross_sections().sigma_a[p];
    for (int s = 0; s < n_s; ++s) {
      double c = u1[lay.s1(p, s)];
      total += eps * sa * c * c * sys.mass(p, s + 1);
    }
  }

  // Slope trace along a face with inward/outward coordinate fixed to `side`.
  auto trace = [&](int p, int axis, double side, double t) {
    double v = 0.0;
    for (int s = 0; s < n_s; ++s) {
      double X = axis == 0 ? side : t;
      double Y = axis == 0 ? t : side;
      v += u1[lay.s1(p, s)] * basis.eval(s + 1, X, Y);
    }
    return v;
  };

  std::array<double, 2> wsum = {0.0, 0.0};
  for (int l = 0; l < quad.n_omega(); ++l)
    if (quad.omega(l, 0) > 0.0)
      for (int a = 0; a < mesh.dim; ++a) wsum[a] += quad.weights[l] * std::abs(quad.omega(l, a));

  for_each_face(mesh, [&](int axis, int lo, int hi) {
    double half = face_half_width(mesh, axis, lo, hi);
    double jump2 = 0.0;
    if (mesh.dim == 1) {
      double j = (lo >= 0 ? trace(lo, axis, 1.0, 0.0) : 0.0) -
                 (hi >= 0 ? trace(hi, axis, -1.0, 0.0) : 0.0);
      jump2 = 2.0 * half * j * j;
    } else {
      for (double t : kGauss2x) {
        double j = (lo >= 0 ? trace(lo, axis, 1.0, t) : 0.0) -
                   (hi >= 0 ? trace(hi, axis, -1.0, t) : 0.0);
        jump2 += half * j * j;
      }
    }
    total += wsum[axis] * jump2;
  });
  return total;
}

EnergyBudget energy_budget(const BlockSystem& sys, const FluxSolution& sol) {
  const auto& mesh = sys.mesh();
  const auto& quad = sys.quad();
  const auto& basis = sys.basis();
  const auto& prob = sys.problem();
  int n_omega = quad.n_omega();
  double eps = prob.epsilon;

  EnergyBudget out;
  double qnorm2 = 0.0;
  for (int p = 0; p < mesh.n_cells(); ++p) {
    double ss = sys.cross_sections().sigma_s[p];
    double sa = sys.cross_sections().sigma_a[p];
    auto c = mesh.center(p);
    double hx = mesh.hx(p), hy = mesh.hy(p);
    int ngy = mesh.dim == 2 ? 4 : 1;
    for (int gx = 0; gx < 4; ++gx)
      for (int gy = 0; gy < ngy; ++gy) {
        std::array<double, 2> x = {c[0] + 0.5 * hx * kGauss4x[gx],
                                   mesh.dim == 2 ? c[1] + 0.5 * hy * kGauss4x[gy] : 0.0};
        double wq = mesh.dim == 2 ? 0.25 * hx * hy * kGauss4w[gx] * kGauss4w[gy]
                                  : 0.5 * hx * kGauss4w[gx];
        double bar = 0.0;
        for (int l = 0; l < n_omega; ++l)
          bar += quad.weights[l] * eval_angular(mesh, basis, sol, l, x);
        for (int l = 0; l < n_omega; ++l) {
          double v = eval_angular(mesh, basis, sol, l, x);
          double d = v - bar;
          out.scattering_defect += wq * quad.weights[l] * ss * d * d / eps;
          out.absorption += 0.5 * eps * wq * quad.weights[l] * sa * v * v;
          double qv = prob.q(quad.ordinates[l], x);
          qnorm2 += wq * quad.weights[l] * qv * qv;
        }
      }
  }

  const auto& lay = sys.layout();
  auto trace = [&](int l, int p, int axis, double side, double t) {
    double v = 0.0;
    for (int r = 0; r < lay.n_p; ++r) {
      double X = axis == 0 ? side : t;
      double Y = axis == 0 ? t : side;
      v += sol.coef(l, p, r) * basis.eval(r, X, Y);
    }
    return v;
  };
  for_each_face(mesh, [&](int axis, int lo, int hi) {
    double half = face_half_width(mesh, axis, lo, hi);
    for (int l = 0; l < n_omega; ++l) {
      double w = quad.weights[l] * std::abs(quad.omega(l, axis));
      if (mesh.dim == 1) {
        double j = (lo >= 0 ? trace(l, lo, axis, 1.0, 0.0) : 0.0) -
                   (hi >= 0 ? trace(l, hi, axis, -1.0, 0.0) : 0.0);
        out.jumps += 0.5 * w * 2.0 * half * j * j;
      } else {
        for (double t : kGauss2x) {
          double j = (lo >= 0 ? trace(l, lo, axis, 1.0, t) : 0.0) -
                     (hi >= 0 ? trace(l, hi, axis, -1.0, t) : 0.0);
          out.jumps += 0.5 * w * half * j * j;
        }
      }
    }
  });

  double delta_a = std::numeric_limits<double>::infinity();
  for (double sa : sys.cross_sections().sigma_a) delta_a = std::min(delta_a, sa);
  out.bound = delta_a > 0.0 ? eps / (2.0 * delta_a) * qnorm2
                            : std::numeric_limits<double>::infinity();
  return out;
}

VariationalResiduals variational_residuals(const BlockSystem& sys, const FluxSolution& sol,
                                           const ReconstructionOps*) {
  const auto& lay = sys.layout();
  Vec psi1 = sol.psi1.size() ? sol.psi1 : Vec::Zero(lay.a1_dim());
  Vec psi = join_blocks(lay, sol.psi0, psi1);
  Vec phi = sys.apply_P(psi);
  Vec res = sys.apply_L(psi) - sys.apply_M(phi) - sys.rhs_full();
  Vec r0, r1;
  split_blocks(lay, res, r0, r1);

  double scale = sys.rhs_full().norm();
  if (scale == 0.0) scale = 1.0;
  VariationalResiduals out;
  out.row0 = r0.norm() / scale;
  if (lay.n_s() == 0)
    out.row1 = 0.0;
  else if (is_reduced(sys.space()))
    out.row1 = sys.sigma_sum(r1).norm() / scale;
  else
    out.row1 = r1.norm() / scale;
  return out;
}

namespace {

void add(CheckReport& rep, const std::string& name, bool pass, double value, double tol,
         std::string detail = "") {
  rep.results.push_back({name, pass, value, tol, std::move(detail)});
}

void check_quadratures(CheckReport& rep) {
  auto probe = [&](const std::string& name, const AngularQuadrature& q) {
    MomentReport m = check_moments(q, 1e-12);
    double worst = std::max({m.zeroth_residual, m.first_residual, m.second_residual});
    add(rep, "quadrature.moments." + name, m.pass && m.centrally_symmetric, worst, 1e-12,
        m.centrally_symmetric ? "" : "not centrally symmetric");
  };
  for (int n : {2, 4, 8, 16, 32}) probe("gl" + std::to_string(n), gauss_legendre_slab(n));
  probe("disk2x4", product_sphere_disk(2, 4));
  probe("disk4x8", product_sphere_disk(4, 8));
  probe("disk6x12", product_sphere_disk(6, 12));
}

ExactSolution cosine_solution() {
  ExactSolution ex;
  ex.value = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
    return std::cos(x[0] + w[0]);
  };
  ex.dx = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
    return -std::sin(x[0] + w[0]);
  };
  ex.dy = zero_fn();
  return ex;
}

ExactSolution sine_2d_solution() {
  ExactSolution ex;
  ex.value = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
    return std::sin(x[0] + x[1]);
  };
  ex.dx = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
    return std::cos(x[0] + x[1]);
  };
  ex.dy = ex.dx;
  return ex;
}

FluxSolution solve_space(const BlockSystem& sys, const ReconstructionSpec& rspec,
                         const SolverConfig& cfg) {
  if (sys.space() == SpaceKind::RLM) {
    ReconstructionOps recon(sys, rspec);
    return solve_rlmdg(sys, recon, cfg);
  }
  if (sys.space() == SpaceKind::LM) return solve_lmdg(sys, cfg);
  return solve_sndg(sys, cfg);
}

void check_pipelines(CheckReport& rep) {
  SolverConfig cfg;
  cfg.rtol = 1e-12;
  cfg.restart = 60;

  AngularQuadrature q1d = gauss_legendre_slab(4);
  ProblemSpec prob1d = manufactured_problem(cosine_solution(), 1.0, 1.0, 1.0, q1d);
  CartesianMesh mesh1d = build_mesh_1d(0.0, 1.0, 8);
  for (SpaceKind s : {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM, SpaceKind::RLM}) {
    BlockSystem sys(prob1d, mesh1d, q1d, s);
    FluxSolution sol = solve_space(sys, ReconstructionSpec{}, cfg);
    VariationalResiduals vr = variational_residuals(sys, sol);
    double worst = std::max(vr.row0, vr.row1);
    add(rep, "pipeline.1d." + space_name(s), worst <= 1e-8, worst, 1e-8,
        "variational residual, " + std::to_string(sol.iterations) + " iterations");
  }

  AngularQuadrature q2d = product_sphere_disk(2, 4);
  ProblemSpec prob2d = manufactured_problem(sine_2d_solution(), 1.0, 1.0, 1.0, q2d);
  CartesianMesh mesh2d = build_mesh_2d(0.0, 1.0, 4, 0.0, 1.0, 4);
  for (SpaceKind s : {SpaceKind::P1, SpaceKind::Q1, SpaceKind::LM, SpaceKind::RLM}) {
    BlockSystem sys(prob2d, mesh2d, q2d, s);
    FluxSolution sol = solve_space(sys, ReconstructionSpec{}, cfg);
    VariationalResiduals vr = variational_residuals(sys, sol);
    double worst = std::max(vr.row0, vr.row1);
    add(rep, "pipeline.2d." + space_name(s), worst <= 1e-8, worst, 1e-8,
        "variational residual, " + std::to_string(sol.iterations) + " iterations");
  }
}

void check_b11(CheckReport& rep) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  auto probe = [&](const std::string& name, const ProblemSpec& prob, const CartesianMesh& mesh,
                   const AngularQuadrature& quad) {
    BlockSystem sys(prob, mesh, quad, SpaceKind::LM);
    const auto& B = sys.b11();
    Eigen::SparseMatrix<double> D = Eigen::SparseMatrix<double>(B.transpose()) - B;
    double asym = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(D, k); it; ++it)
        asym = std::max(asym, std::abs(it.value()));
    add(rep, "b11.symmetric." + name, asym <= 1e-12, asym, 1e-12);
    add(rep, "b11.spd." + name, sys.b11_spd(), sys.b11_spd() ? 1.0 : 0.0, 1.0,
        "factorization positive definite");

    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      Vec u(sys.layout().s1_dim());
      for (Index i = 0; i < u.size(); ++i) u[i] = dist(rng);
      double via_matrix = u.dot(sys.b11_mult(u));
      double via_form = b11_quadratic_form(sys, u);
      double rel = std::abs(via_matrix - via_form) / std::max(1.0, std::abs(via_form));
      worst = std::max(worst, rel);
    }
    add(rep, "b11.quadratic_form." + name, worst <= 1e-10, worst, 1e-10,
        "matrix vs variational identity");
  };

  ProblemSpec p1 = ProblemSpec::constant(1.0, 2.0, 0.5, zero_fn(), zero_fn());
  probe("1d", p1, build_mesh_1d(0.0, 1.0, 10), gauss_legendre_slab(8));
  ProblemSpec p2 = ProblemSpec::constant(0.25, 1.5, 0.75, zero_fn(), zero_fn());
  probe("2d", p2, build_mesh_2d(0.0, 1.0, 5, 0.0, 1.0, 4), product_sphere_disk(2, 4));
}

void check_energy(CheckReport& rep) {
  SolverConfig cfg;
  cfg.rtol = 1e-12;
  cfg.restart = 80;
  cfg.max_iters = 4000;

  auto probe = [&](const std::string& name, const ProblemSpec& prob, const CartesianMesh& mesh,
                   const AngularQuadrature& quad, std::vector<SpaceKind> spaces) {
    for (SpaceKind s : spaces) {
      BlockSystem sys(prob, mesh, quad, s);
      FluxSolution sol = solve_space(sys, ReconstructionSpec{}, cfg);
      EnergyBudget eb = energy_budget(sys, sol);
      double ratio = eb.lhs() / eb.bound;
      add(rep, "energy." + name + "." + space_name(s), eb.holds(), ratio, 1.0,
          "lhs/bound");
    }
  };

  for (double eps : {1.0, 1e-3, 1e-5}) {
    ProblemSpec ps = ProblemSpec::constant(
        eps, 1.0, 1.0,
        isotropic([](const std::array<double, 2>& x) { return 4.0 / 3.0 * std::sin(x[0]); }),
        zero_fn());
    char tag[32];
    std::snprintf(tag, sizeof(tag), "1d.eps%g", eps);
    probe(tag, ps, build_mesh_1d(0.0, M_PI, 20), gauss_legendre_slab(8),
          {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM});
  }

  double k = M_PI * M_PI / 6.0 + 1.0;
  ProblemSpec ps2 = ProblemSpec::constant(
      1.0 / 64.0, 1.0, 1.0, isotropic([k](const std::array<double, 2>& x) {
        return k * std::cos(0.5 * M_PI * x[0]) * std::cos(0.5 * M_PI * x[1]);
      }),
      zero_fn());
  probe("2d.eps2m6", ps2, build_mesh_2d(-1.0, 1.0, 10, -1.0, 1.0, 10), product_sphere_disk(2, 4),
        {SpaceKind::P0, SpaceKind::P1, SpaceKind::Q1, SpaceKind::LM});
}

void check_stencil(CheckReport& rep) {
  double ss = 3.1, sa = 0.7;
  ProblemSpec prob = ProblemSpec::constant(1.0, ss, sa, zero_fn(), zero_fn());
  CartesianMesh mesh = build_mesh_2d(0.0, 1.0, 8, 0.0, 1.0, 8);
  double h = mesh.hx(0);
  auto row = stencil_row(mesh, prob, 4, 3);
  auto formula = stencil_formula(h, ss, sa);
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      worst = std::max(worst, std::abs(row[a][b] - h * h * formula[a][b]));
      scale = std::max(scale, std::abs(row[a][b]));
    }
  add(rep, "limit.stencil", worst <= 1e-12 * scale, worst / scale, 1e-12,
      "assembled row vs closed form");
}

void check_reconstruction(CheckReport& rep) {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SolverConfig cfg;
  cfg.rtol = 1e-12;

  // Slope isotropy of the low-memory solution: identical slope coefficients
  // for every ordinate, bit for bit.
  AngularQuadrature q1d = gauss_legendre_slab(8);
  ProblemSpec prob = manufactured_problem(cosine_solution(), 1.0, 1.0, 1.0, q1d);
  CartesianMesh mesh = build_mesh_1d(0.0, 1.0, 12);
  {
    BlockSystem sys(prob, mesh, q1d, SpaceKind::LM);
    FluxSolution sol = solve_lmdg(sys, cfg);
    const auto& lay = sys.layout();
    double worst = 0.0;
    for (int l = 1; l < lay.n_omega; ++l)
      for (int p = 0; p < lay.n_x; ++p)
        for (int s = 0; s < lay.n_s(); ++s)
          worst = std::max(worst,
                           std::abs(sol.psi1[lay.a1(l, p, s)] - sol.psi1[lay.a1(0, p, s)]));
    add(rep, "recon.lm_slope_isotropy", worst == 0.0, worst, 0.0);
  }

  auto probe_rstar = [&](const std::string& name, const ProblemSpec& ps,
                         const CartesianMesh& m, const AngularQuadrature& q) {
    BlockSystem sys(ps, m, q, SpaceKind::RLM);
    ReconstructionOps recon(sys, ReconstructionSpec{});
    const auto& lay = sys.layout();
    Vec psi0(lay.a0_dim());
    for (Index i = 0; i < psi0.size(); ++i) psi0[i] = dist(rng);
    Vec dev = recon.apply_rstar(psi0);
    double dev_scale = dev.lpNorm<Eigen::Infinity>();
    double mean = sys.apply_P1(dev).lpNorm<Eigen::Infinity>();
    add(rep, "recon.rstar_mean_zero." + name, mean <= 1e-14 * std::max(1.0, dev_scale), mean,
        1e-14, "ordinate average of slope deviations");

    // Downwind perturbation: reconstructed slopes may react only to upwind
    // neighbors.
    double leak = 0.0;
    for (int l = 0; l < lay.n_omega; ++l)
      for (int axis = 0; axis < m.dim; ++axis) {
        int probe_cell = m.cell_index(m.nx() / 2, m.dim == 2 ? m.ny() / 2 : 0);
        int down = m.neighbor(probe_cell, axis, sys.quad().omega(l, axis) > 0.0 ? +1 : -1);
        if (down < 0) continue;
        Vec e = Vec::Zero(lay.a0_dim());
        e[lay.a0(l, down)] = 1.0;
        Vec r = recon.apply_R(e);
        for (int s = 0; s < lay.n_s(); ++s)
          leak = std::max(leak, std::abs(r[lay.a1(l, probe_cell, s)]));
      }
    add(rep, "recon.upwind_only." + name, leak == 0.0, leak, 0.0,
        "downwind perturbation leakage");
  };
  probe_rstar("1d", prob, mesh, q1d);

  AngularQuadrature q2d = product_sphere_disk(2, 4);
  ProblemSpec prob2 = manufactured_problem(sine_2d_solution(), 1.0, 1.0, 1.0, q2d);
  probe_rstar("2d", prob2, build_mesh_2d(0.0, 1.0, 6, 0.0, 1.0, 5), q2d);
}

void check_dofs(CheckReport& rep) {
  bool all = true;
  long long worst = 0;
  for (int dim : {1, 2, 3})
    for (SpaceKind s :
         {SpaceKind::P0, SpaceKind::P1, SpaceKind::Q1, SpaceKind::LM, SpaceKind::RLM})
      for (long long n_omega : {8LL, 24LL})
        for (long long n_x : {16LL, 100LL}) {
          DofReport r = count_dofs(s, dim, n_omega, n_x);
          long long np = s == SpaceKind::P0   ? 1
                         : s == SpaceKind::P1 ? dim + 1
                                              : (1LL << dim);
          long long per_cell = is_reduced(s) ? n_omega + np - 1 : n_omega * np;
          long long solution = per_cell * n_x;
          long long reduced = np * n_x;
          long long diff = std::llabs(r.per_cell - per_cell) +
                           std::llabs(r.solution_dim - solution) +
                           std::llabs(r.reduced_dim - reduced);
          worst = std::max(worst, diff);
          all = all && diff == 0;
        }
  add(rep, "dofs.table_formulas", all, static_cast<double>(worst), 0.0,
      "per-cell, solution, reduced sizes");
}

}  // namespace

CheckReport run_checks() {
  CheckReport rep;
  check_quadratures(rep);
  check_pipelines(rep);
  check_b11(rep);
  check_energy(rep);
  check_stencil(rep);
  check_reconstruction(rep);
  check_dofs(rep);
  return rep;
}

std::string format_report(const CheckReport& rep) {
  std::string out;
  char line[256];
  for (const auto& r : rep.results) {
    std::snprintf(line, sizeof(line), "[%s] %-34s value=%-12.4g tol=%-10.3g %s\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.value, r.tol, r.detail.c_str());
    out += line;
  }
  std::snprintf(line, sizeof(line), "%d/%d checks passed\n",
                static_cast<int>(rep.results.size()) - rep.failures(),
                static_cast<int>(rep.results.size()));
  out += line;
  return out;
}

}  // namespace snlm
