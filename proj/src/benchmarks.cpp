#include "snlm/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "snlm/assembly.hpp"

namespace snlm {

namespace {

constexpr double kBig = 1e300;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<double, 4> kGauss4x = {-0.8611363115940525752, -0.3399810435848562648,
                                            0.3399810435848562648, 0.8611363115940525752};
constexpr std::array<double, 4> kGauss4w = {0.3478548451374538574, 0.6521451548839258726,
                                            0.6521451548839258726, 0.3478548451374538574};

MaterialRegion whole_domain(double ss, double sa) {
  return {{-kBig, -kBig}, {kBig, kBig}, ss, sa};
}

MaterialRegion band_x(double x_lo, double x_hi, double ss, double sa) {
  return {{x_lo, -kBig}, {x_hi, kBig}, ss, sa};
}

BenchmarkCase base_1d(const std::string& id, double lo, double hi) {
  BenchmarkCase c;
  c.id = id;
  c.dim = 1;
  c.lo = {lo, 0.0};
  c.hi = {hi, 0.0};
  c.q = zero_fn();
  c.alpha = zero_fn();
  c.schemes = {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM, SpaceKind::RLM};
  return c;
}

BenchmarkCase make_ex41(bool aniso) {
  BenchmarkCase c = base_1d(aniso ? "ex41_aniso" : "ex41_iso", 0.0, 1.0);
  c.eps = 1.0;
  c.sigma_s = 1.0;
  c.sigma_a = 1.0;
  c.ref = RefPolicy::ExactAngular;
  c.ladder = {40, 80, 160, 320};
  c.ordinates = 32;
  ExactSolution ex;
  if (aniso) {
    ex.value = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return std::cos(x[0] + w[0]);
    };
    ex.dx = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return -std::sin(x[0] + w[0]);
    };
  } else {
    ex.value = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return std::cos(x[0]);
    };
    ex.dx = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return -std::sin(x[0]);
    };
  }
  ex.dy = zero_fn();
  c.exact = std::move(ex);
  return c;
}

BenchmarkCase make_ex42() {
  BenchmarkCase c = base_1d("ex42", 0.0, M_PI);
  c.eps = 1e-5;
  c.regions = {whole_domain(1.0, 1.0)};
  c.q = isotropic([](const std::array<double, 2>& x) { return 4.0 / 3.0 * std::sin(x[0]); });
  c.ref = RefPolicy::FineReference;
  c.fine_cells = 1280;
  c.ladder = {20, 40, 80, 160};
  c.ordinates = 32;
  return c;
}

BenchmarkCase make_ex43(double sigma_s2) {
  BenchmarkCase c = base_1d("ex43_" + std::to_string(static_cast<int>(sigma_s2)), 0.0, 1.0);
  c.eps = 1.0;
  c.regions = {band_x(-kBig, 0.5, 100.0, 0.0), band_x(0.5, kBig, sigma_s2, 0.0)};
  c.q = isotropic([](const std::array<double, 2>&) { return 0.01; });
  c.ref = RefPolicy::FineReference;
  c.fine_cells = 4000;
  c.profile_cells = 10;
  c.ladder = {10, 50};
  c.ordinates = 32;
  return c;
}

BenchmarkCase make_ex44() {
  BenchmarkCase c = base_1d("ex44", 0.0, 11.0);
  c.eps = 1.0;
  c.regions = {band_x(-kBig, 1.0, 0.0, 2.0), band_x(1.0, kBig, 100.0, 0.0)};
  c.alpha = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
    return x[0] < 5.5 ? 1.0 : 0.0;
  };
  c.ref = RefPolicy::FineReference;
  c.ordinates = 16;
  c.split_mesh = true;
  c.split_at = 1.0;
  c.split_left = 10;   // h = 0.1 on (0, 1)
  c.split_right = 10;  // h = 1 on (1, 11)
  c.fine_split_left = 400;
  c.fine_split_right = 2000;
  return c;
}

BenchmarkCase make_ex45() {
  BenchmarkCase c = base_1d("ex45", 0.0, 20.0);
  c.eps = 1.0;
  c.regions = {band_x(-kBig, 10.0, 90.0, 10.0), band_x(10.0, kBig, 100.0, 0.0)};
  c.q = isotropic([](const std::array<double, 2>& x) { return x[0] < 10.0 ? 1.0 : 0.0; });
  c.ref = RefPolicy::FineReference;
  c.ordinates = 16;
  c.profile_cells = 20;
  c.fine_cells = 2000;
  return c;
}

BenchmarkCase base_2d(const std::string& id, double lo, double hi) {
  BenchmarkCase c;
  c.id = id;
  c.dim = 2;
  c.lo = {lo, lo};
  c.hi = {hi, hi};
  c.q = zero_fn();
  c.alpha = zero_fn();
  c.polar = 4;
  c.azimuth = 8;
  c.schemes = {SpaceKind::P0, SpaceKind::P1, SpaceKind::Q1, SpaceKind::LM, SpaceKind::RLM};
  return c;
}

BenchmarkCase make_ex46(int variant) {
  std::string id = variant == 0 ? "ex46_iso" : (variant == 3 ? "ex46_aniso" : "ex46_aniso2");
  BenchmarkCase c = base_2d(id, 0.0, 1.0);
  c.eps = 1.0;
  c.sigma_s = 1.0;
  c.sigma_a = 1.0;
  c.ref = RefPolicy::ExactAngular;
  c.ladder = {20, 40, 80};
  ExactSolution ex;
  if (variant == 0) {
    ex.value = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return std::sin(x[0] + x[1]);
    };
    ex.dx = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return std::cos(x[0] + x[1]);
    };
    ex.dy = ex.dx;
  } else {
    double k = static_cast<double>(variant);
    auto amp = [k](const std::array<double, 2>& w) {
      double a = w[0] - k * w[1];
      return a * a;
    };
    ex.value = [amp](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return amp(w) * std::sin(2.0 * x[0] + x[1]);
    };
    ex.dx = [amp](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return 2.0 * amp(w) * std::cos(2.0 * x[0] + x[1]);
    };
    ex.dy = [amp](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return amp(w) * std::cos(2.0 * x[0] + x[1]);
    };
  }
  c.exact = std::move(ex);
  return c;
}

BenchmarkCase make_ex47() {
  BenchmarkCase c = base_2d("ex47", -1.0, 1.0);
  c.eps = 1.0;
  c.regions = {whole_domain(1.0, 1.0)};
  double k = M_PI * M_PI / 6.0 + 1.0;
  c.q = isotropic([k](const std::array<double, 2>& x) {
    return k * std::cos(0.5 * M_PI * x[0]) * std::cos(0.5 * M_PI * x[1]);
  });
  c.exact_scalar = [](const std::array<double, 2>& x) {
    return std::cos(0.5 * M_PI * x[0]) * std::cos(0.5 * M_PI * x[1]);
  };
  c.ref = RefPolicy::FineReference;
  c.profile_cells = 40;
  c.fine_cells = 80;
  return c;
}

CartesianMesh fine_mesh(const BenchmarkCase& c) {
  if (c.split_mesh)
    return build_mesh_1d_split(c.lo[0], c.split_at, c.hi[0], c.fine_split_left,
                               c.fine_split_right);
  if (c.dim == 1) return build_mesh_1d(c.lo[0], c.hi[0], c.fine_cells);
  return build_mesh_2d(c.lo[0], c.hi[0], c.fine_cells, c.lo[1], c.hi[1], c.fine_cells);
}

FluxSolution solve_on(const BlockSystem& sys, const StudyOptions& opt) {
  if (sys.space() == SpaceKind::RLM) {
    ReconstructionOps recon(sys, opt.recon);
    return solve_rlmdg(sys, recon, opt.solver);
  }
  if (sys.space() == SpaceKind::LM) return solve_lmdg(sys, opt.solver);
  return solve_sndg(sys, opt.solver);
}

// 4-point-per-axis cell rule applied to |f|, summed over cells.
template <class F>
double cell_l1(const CartesianMesh& mesh, F&& f) {
  double total = 0.0;
  for (int p = 0; p < mesh.n_cells(); ++p) {
    auto c = mesh.center(p);
    double hx = mesh.hx(p), hy = mesh.hy(p);
    if (mesh.dim == 1) {
      for (int g = 0; g < 4; ++g) {
        std::array<double, 2> x = {c[0] + 0.5 * hx * kGauss4x[g], 0.0};
        total += 0.5 * hx * kGauss4w[g] * std::abs(f(p, x));
      }
    } else {
      for (int gx = 0; gx < 4; ++gx)
        for (int gy = 0; gy < 4; ++gy) {
          std::array<double, 2> x = {c[0] + 0.5 * hx * kGauss4x[gx],
                                     c[1] + 0.5 * hy * kGauss4x[gy]};
          total += 0.25 * hx * hy * kGauss4w[gx] * kGauss4w[gy] * std::abs(f(p, x));
        }
    }
  }
  return total;
}

}  // namespace

std::vector<std::string> benchmark_ids() {
  return {"ex41_iso", "ex41_aniso", "ex42",        "ex43_100",    "ex43_1000", "ex43_10000",
          "ex44",     "ex45",       "ex46_iso",    "ex46_aniso",  "ex46_aniso2", "ex47"};
}

BenchmarkCase get_case(const std::string& id, double eps_override) {
  BenchmarkCase c;
  if (id == "ex41_iso")
    c = make_ex41(false);
  else if (id == "ex41_aniso")
    c = make_ex41(true);
  else if (id == "ex42")
    c = make_ex42();
  else if (id == "ex43_100")
    c = make_ex43(100.0);
  else if (id == "ex43_1000")
    c = make_ex43(1000.0);
  else if (id == "ex43_10000")
    c = make_ex43(10000.0);
  else if (id == "ex44")
    c = make_ex44();
  else if (id == "ex45")
    c = make_ex45();
  else if (id == "ex46_iso")
    c = make_ex46(0);
  else if (id == "ex46_aniso")
    c = make_ex46(3);
  else if (id == "ex46_aniso2")
    c = make_ex46(2);
  else if (id == "ex47")
    c = make_ex47();
  else
    throw std::invalid_argument("unknown benchmark case: " + id);
  if (eps_override > 0.0) c.eps = eps_override;
  return c;
}

AngularQuadrature case_quadrature(const BenchmarkCase& c, int ordinate_override) {
  if (c.dim == 1) return gauss_legendre_slab(ordinate_override > 0 ? ordinate_override : c.ordinates);
  // 2D override sets the polar count; the azimuth count stays at twice that.
  int np = ordinate_override > 0 ? ordinate_override : c.polar;
  int na = ordinate_override > 0 ? 2 * ordinate_override : c.azimuth;
  return product_sphere_disk(np, na);
}

CartesianMesh case_mesh(const BenchmarkCase& c, int cells_x, int cells_y) {
  if (c.split_mesh) {
    int nl = cells_x > 0 ? cells_x : c.split_left;
    int nr = c.split_right;
    if (cells_x > 0 && cells_x != c.split_left) {
      double scale = static_cast<double>(cells_x) / c.split_left;
      nr = std::max(1, static_cast<int>(std::lround(scale * c.split_right)));
    }
    return build_mesh_1d_split(c.lo[0], c.split_at, c.hi[0], nl, nr);
  }
  int n = cells_x > 0 ? cells_x : (c.profile_cells > 0 ? c.profile_cells : c.ladder.front());
  if (c.dim == 1) return build_mesh_1d(c.lo[0], c.hi[0], n);
  int m = cells_y > 0 ? cells_y : n;
  return build_mesh_2d(c.lo[0], c.hi[0], n, c.lo[1], c.hi[1], m);
}

ProblemSpec case_problem(const BenchmarkCase& c, const AngularQuadrature& quad) {
  if (c.exact) return manufactured_problem(*c.exact, c.eps, c.sigma_s, c.sigma_a, quad);
  ProblemSpec ps;
  ps.epsilon = c.eps;
  ps.regions = c.regions;
  ps.q = c.q;
  ps.alpha = c.alpha;
  return ps;
}

ProblemSpec manufactured_problem(const ExactSolution& exact, double eps, double sigma_s,
                                 double sigma_a, const AngularQuadrature& quad) {
  AngularFn value = exact.value;
  AngularFn dx = exact.dx;
  AngularFn dy = exact.dy ? exact.dy : zero_fn();
  AngularQuadrature q = quad;
  AngularFn src = [=](const std::array<double, 2>& w, const std::array<double, 2>& x) {
    double bar = 0.0;
    for (int j = 0; j < q.n_omega(); ++j) bar += q.weights[j] * value(q.ordinates[j], x);
    double adv = w[0] * dx(w, x);
    if (q.dim == 2) adv += w[1] * dy(w, x);
    double v = value(w, x);
    return (adv + (sigma_s / eps + eps * sigma_a) * v - (sigma_s / eps) * bar) / eps;
  };
  return ProblemSpec::constant(eps, sigma_s, sigma_a, std::move(src), value);
}

double l1_error_angular(const BlockSystem& sys, const FluxSolution& sol, const AngularFn& exact) {
  const auto& quad = sys.quad();
  double total = 0.0;
  for (int l = 0; l < quad.n_omega(); ++l) {
    double e = cell_l1(sys.mesh(), [&](int, const std::array<double, 2>& x) {
      return eval_angular(sys.mesh(), sys.basis(), sol, l, x) - exact(quad.ordinates[l], x);
    });
    total += quad.weights[l] * e;
  }
  return total;
}

double l1_error_scalar(const BlockSystem& sys, const FluxSolution& sol,
                       const SpatialFn& exact_scalar) {
  ScalarMoments mom = derive_moments(sys, sol);
  return cell_l1(sys.mesh(), [&](int, const std::array<double, 2>& x) {
    return eval_field(sys.mesh(), sys.basis(), mom.scalar, x) - exact_scalar(x);
  });
}

double l1_error_against(const BlockSystem& sys, const FluxSolution& sol,
                        const BlockSystem& ref_sys, const FluxSolution& ref) {
  ScalarMoments mom = derive_moments(sys, sol);
  ScalarMoments ref_mom = derive_moments(ref_sys, ref);
  return cell_l1(sys.mesh(), [&](int, const std::array<double, 2>& x) {
    return eval_field(sys.mesh(), sys.basis(), mom.scalar, x) -
           eval_field(ref_sys.mesh(), ref_sys.basis(), ref_mom.scalar, x);
  });
}

ErrorReport run_convergence_study(const BenchmarkCase& c, const StudyOptions& opt) {
  ErrorReport rep;
  rep.case_id = c.id;
  const auto& ladder = opt.ladder.empty() ? c.ladder : opt.ladder;
  const auto& schemes = opt.schemes.empty() ? c.schemes : opt.schemes;
  if (ladder.empty()) throw std::invalid_argument("case has no mesh ladder");
  AngularQuadrature quad = case_quadrature(c, opt.ordinate_override);
  ProblemSpec problem = case_problem(c, quad);

  std::unique_ptr<BlockSystem> ref_sys;
  FluxSolution ref_sol;
  if (c.ref == RefPolicy::FineReference) {
    SpaceKind fs = c.dim == 1 ? SpaceKind::P1 : SpaceKind::Q1;
    ref_sys = std::make_unique<BlockSystem>(problem, fine_mesh(c), quad, fs);
    ref_sol = solve_on(*ref_sys, opt);
  }

  for (SpaceKind scheme : schemes) {
    double prev = kNaN;
    for (int n : ladder) {
      CartesianMesh mesh = case_mesh(c, n);
      ErrorRow row;
      row.scheme = scheme;
      row.cells = n;
      row.h = mesh.hx(0);
      row.order = kNaN;
      DofReport dofs = count_dofs(scheme, c.dim, quad.n_omega(), mesh.n_cells());
      row.dofs = dofs.solution_dim;
      row.reduced_dim = dofs.reduced_dim;
      try {
        BlockSystem sys(problem, mesh, quad, scheme);
        FluxSolution sol = solve_on(sys, opt);
        row.iterations = sol.iterations;
        row.status = status_name(sol.status);
        switch (c.ref) {
          case RefPolicy::ExactAngular:
            row.error = l1_error_angular(sys, sol, c.exact->value);
            break;
          case RefPolicy::ExactScalar:
            row.error = l1_error_scalar(sys, sol, c.exact_scalar);
            break;
          case RefPolicy::FineReference:
            row.error = l1_error_against(sys, sol, *ref_sys, ref_sol);
            break;
        }
        if (!std::isnan(prev)) row.order = std::log2(prev / row.error);
        prev = row.error;
      } catch (const std::exception& e) {
        row.error = kNaN;
        row.status = std::string("error: ") + e.what();
        prev = kNaN;
      }
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

ProfileData run_profile(const BenchmarkCase& c, SpaceKind scheme, int cells_x,
                        const StudyOptions& opt, int cells_y) {
  AngularQuadrature quad = case_quadrature(c, opt.ordinate_override);
  ProblemSpec problem = case_problem(c, quad);
  CartesianMesh mesh = case_mesh(c, cells_x, cells_y);
  BlockSystem sys(problem, mesh, quad, scheme);
  FluxSolution sol = solve_on(sys, opt);
  ScalarMoments mom = derive_moments(sys, sol);

  ProfileData prof;
  prof.case_id = c.id;
  prof.scheme = scheme;
  prof.mesh = mesh;
  prof.iterations = sol.iterations;
  prof.status = status_name(sol.status);
  prof.scalar.resize(mesh.n_cells());
  for (int p = 0; p < mesh.n_cells(); ++p)
    prof.scalar[p] = eval_field(mesh, sys.basis(), mom.scalar, mesh.center(p));
  return prof;
}

ProfileData reference_profile(const BenchmarkCase& c, const CartesianMesh& sample_mesh,
                              const StudyOptions& opt) {
  AngularQuadrature quad = case_quadrature(c, opt.ordinate_override);
  ProblemSpec problem = case_problem(c, quad);
  SpaceKind fs = c.dim == 1 ? SpaceKind::P1 : SpaceKind::Q1;
  BlockSystem sys(problem, fine_mesh(c), quad, fs);
  FluxSolution sol = solve_on(sys, opt);
  ScalarMoments mom = derive_moments(sys, sol);

  ProfileData prof;
  prof.case_id = c.id;
  prof.scheme = fs;
  prof.mesh = sample_mesh;
  prof.iterations = sol.iterations;
  prof.status = status_name(sol.status);
  prof.scalar.resize(sample_mesh.n_cells());
  for (int p = 0; p < sample_mesh.n_cells(); ++p)
    prof.scalar[p] = eval_field(sys.mesh(), sys.basis(), mom.scalar, sample_mesh.center(p));
  return prof;
}

double profile_rel_l1(const ProfileData& sol, const ProfileData& ref) {
  if (sol.scalar.size() != ref.scalar.size())
    throw std::invalid_argument("profiles sampled on different grids");
  double num = 0.0, den = 0.0;
  for (int p = 0; p < static_cast<int>(sol.scalar.size()); ++p) {
    double vol = sol.mesh.volume(p);
    num += vol * std::abs(sol.scalar[p] - ref.scalar[p]);
    den += vol * std::abs(ref.scalar[p]);
  }
  if (den == 0.0) throw std::invalid_argument("reference profile is identically zero");
  return num / den;
}

}  // namespace snlm
