// End-to-end gate: one verdict line per shipped guarantee, exit code is the
// number of failures.  Tolerances are stated inline next to each gate.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "snlm/checks.hpp"
#include "support/dense_oracle.hpp"

using namespace snlm;

namespace {

int g_failures = 0;

struct Gate {
  bool pass = true;
  std::string why;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) why = what;
      pass = false;
    }
  }
};

void verdict(int crit, const std::string& what, const Gate& g) {
  std::printf("[%s] criterion %d: %s%s%s\n", g.pass ? "PASS" : "FAIL", crit, what.c_str(),
              g.pass ? "" : " -- ", g.pass ? "" : g.why.c_str());
  std::fflush(stdout);
  if (!g.pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

const ErrorRow* find_row(const ErrorReport& rep, SpaceKind s, int cells) {
  for (const auto& r : rep.rows)
    if (r.scheme == s && r.cells == cells) return &r;
  return nullptr;
}

std::vector<const ErrorRow*> ladder_rows(const ErrorReport& rep, SpaceKind s) {
  std::vector<const ErrorRow*> out;
  for (const auto& r : rep.rows)
    if (r.scheme == s) out.push_back(&r);
  return out;
}

void print_rows(const ErrorReport& rep) {
  for (const auto& r : rep.rows)
    std::printf("    %-10s %-5s n=%-4d h=%-9.4g err=%-11.4g order=%-7.3f iters=%-5d %s\n",
                rep.case_id.c_str(), space_name(r.scheme).c_str(), r.cells, r.h, r.error,
                r.order, r.iterations, r.status.c_str());
  std::fflush(stdout);
}

bool within(double got, double want, double rel) {
  return std::isfinite(got) && std::abs(got - want) <= rel * std::abs(want);
}

// All refinement orders of a scheme land in [lo, hi]; the coarsest row has no
// order and is skipped.
void gate_orders(Gate& g, const ErrorReport& rep, SpaceKind s, double lo, double hi) {
  auto rows = ladder_rows(rep, s);
  for (size_t i = 1; i < rows.size(); ++i)
    g.require(std::isfinite(rows[i]->order) && rows[i]->order >= lo && rows[i]->order <= hi,
              rep.case_id + " " + space_name(s) +
                  fmt(" order %.3f outside [%.2f, %.2f]", rows[i]->order, lo, hi));
}

void gate_converged(Gate& g, const ErrorReport& rep) {
  for (const auto& r : rep.rows)
    g.require(r.status == "converged",
              rep.case_id + " " + space_name(r.scheme) + " n=" + std::to_string(r.cells) +
                  " status " + r.status);
}

// Tight-tolerance runs may stop at the attainable Krylov floor; the error and
// order gates arbitrate those, so only hard failures disqualify a row here.
void gate_no_errors(Gate& g, const ErrorReport& rep) {
  for (const auto& r : rep.rows)
    g.require(r.status.rfind("error", 0) != 0,
              rep.case_id + " " + space_name(r.scheme) + " n=" + std::to_string(r.cells) +
                  " status " + r.status);
}

// ---- slab accuracy ladders -------------------------------------------------

void criterion_1() {
  Gate g;
  StudyOptions opt;
  opt.schemes = {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM};
  ErrorReport rep = run_convergence_study(get_case("ex41_iso"), opt);
  print_rows(rep);
  gate_converged(g, rep);

  const int cells[4] = {40, 80, 160, 320};
  const double p1_ref[4] = {2.48e-5, 6.27e-6, 1.58e-6, 3.96e-7};
  const double lm_ref[4] = {2.24e-5, 5.62e-6, 1.41e-6, 3.52e-7};
  for (int i = 0; i < 4; ++i) {
    const ErrorRow* p1 = find_row(rep, SpaceKind::P1, cells[i]);
    const ErrorRow* lm = find_row(rep, SpaceKind::LM, cells[i]);
    g.require(p1 && within(p1->error, p1_ref[i], 0.20),
              fmt("p1 error %.3e vs %.3e beyond 20%%", p1 ? p1->error : -1.0, p1_ref[i]));
    g.require(lm && within(lm->error, lm_ref[i], 0.20),
              fmt("lm error %.3e vs %.3e beyond 20%%", lm ? lm->error : -1.0, lm_ref[i]));
  }
  gate_orders(g, rep, SpaceKind::P1, 1.88, 2.10);
  gate_orders(g, rep, SpaceKind::LM, 1.88, 2.10);
  gate_orders(g, rep, SpaceKind::P0, 0.90, 1.10);
  verdict(1, "isotropic slab ladder: second order with reference errors", g);
}

void criterion_2() {
  Gate g;
  StudyOptions opt;
  opt.schemes = {SpaceKind::LM, SpaceKind::RLM};
  ErrorReport rep = run_convergence_study(get_case("ex41_aniso"), opt);
  print_rows(rep);
  gate_converged(g, rep);

  const ErrorRow* lm = find_row(rep, SpaceKind::LM, 40);
  const ErrorRow* rlm = find_row(rep, SpaceKind::RLM, 40);
  g.require(lm && within(lm->error, 3.20e-3, 0.20),
            fmt("lm coarse error %.3e vs 3.20e-3 beyond 20%%", lm ? lm->error : -1.0));
  g.require(rlm && within(rlm->error, 7.74e-5, 0.20),
            fmt("rlm coarse error %.3e vs 7.74e-5 beyond 20%%", rlm ? rlm->error : -1.0));
  gate_orders(g, rep, SpaceKind::LM, 0.90, 1.10);
  gate_orders(g, rep, SpaceKind::RLM, 1.90, 2.10);
  verdict(2, "anisotropic slab ladder: shared slopes first order, reconstructed second", g);
}

// ---- diffusion-limit ladder ------------------------------------------------

void criterion_3() {
  Gate g;
  {
    // Deep in the diffusion regime the reduced spectra are elliptic-like and
    // short restarts stall; the 1D systems are small enough for full recurrences.
    StudyOptions opt;
    opt.solver.restart = 700;
    opt.solver.rtol = 1e-12;
    opt.solver.max_iters = 5000;
    opt.schemes = {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM, SpaceKind::RLM};
    ErrorReport rep = run_convergence_study(get_case("ex42"), opt);
    print_rows(rep);
    gate_no_errors(g, rep);
    for (const ErrorRow* r : ladder_rows(rep, SpaceKind::P0)) {
      g.require(within(r->error, 2.00, 0.20),
                fmt("p0 error %.3e not pinned near 2.00", r->error));
      if (std::isfinite(r->order))
        g.require(std::abs(r->order) <= 0.05, fmt("p0 order %.3f not ~0", r->order));
    }
    gate_orders(g, rep, SpaceKind::LM, 1.85, 2.15);
    gate_orders(g, rep, SpaceKind::RLM, 1.85, 2.15);
  }
  {
    StudyOptions opt;
    opt.schemes = {SpaceKind::LM, SpaceKind::RLM};
    ErrorReport rep = run_convergence_study(get_case("ex42", 1.0), opt);
    print_rows(rep);
    gate_no_errors(g, rep);
    gate_orders(g, rep, SpaceKind::LM, 0.90, 1.10);
    for (const ErrorRow* r : ladder_rows(rep, SpaceKind::RLM))
      if (std::isfinite(r->order))
        g.require(r->order >= 1.85, fmt("rlm order %.3f below 1.85", r->order));
  }
  verdict(3, "diffusion-limit ladder: flat constants recover second order at eps=1e-5", g);
}

// ---- 2D ladders ------------------------------------------------------------

void criterion_4() {
  Gate g;
  StudyOptions opt;
  opt.schemes = {SpaceKind::LM, SpaceKind::RLM};
  auto timed = [&](const char* id) {
    auto t0 = std::chrono::steady_clock::now();
    ErrorReport rep = run_convergence_study(get_case(id), opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("    %s ladder wall time %.1f s\n", id, secs);
    print_rows(rep);
    gate_converged(g, rep);
    g.require(secs <= 600.0, std::string(id) + fmt(" ladder took %.0f s (limit 600)", secs));
    return rep;
  };

  ErrorReport iso = timed("ex46_iso");
  gate_orders(g, iso, SpaceKind::LM, 1.85, 2.15);
  gate_orders(g, iso, SpaceKind::RLM, 1.85, 2.15);

  for (const char* id : {"ex46_aniso", "ex46_aniso2"}) {
    ErrorReport rep = timed(id);
    gate_orders(g, rep, SpaceKind::LM, 0.90, 1.10);
    gate_orders(g, rep, SpaceKind::RLM, 1.85, 2.15);
  }
  verdict(4, "2D ladders: isotropic both second order, anisotropic splits 1 vs 2", g);
}

// ---- fixed-data profiles ---------------------------------------------------

double profile_gap(const BenchmarkCase& c, SpaceKind s, int cells, const StudyOptions& opt,
                   ProfileData* keep = nullptr, ProfileData* keep_ref = nullptr) {
  ProfileData p = run_profile(c, s, cells, opt);
  ProfileData ref = reference_profile(c, p.mesh, opt);
  double gap = profile_rel_l1(p, ref);
  std::printf("    %-10s %-5s n=%-4d rel_l1=%-9.3g iters=%-5d %s\n", c.id.c_str(),
              space_name(s).c_str(), cells, gap, p.iterations, p.status.c_str());
  std::fflush(stdout);
  if (keep) *keep = std::move(p);
  if (keep_ref) *keep_ref = std::move(ref);
  return gap;
}

void criterion_5() {
  Gate g;
  StudyOptions opt;

  for (const char* id : {"ex43_100", "ex43_1000", "ex43_10000"}) {
    double gap = profile_gap(get_case(id), SpaceKind::LM, 10, opt);
    g.require(gap < 0.05, std::string(id) + fmt(" lm profile off by %.3g", gap));
  }

  {
    BenchmarkCase c = get_case("ex44");
    double gap = profile_gap(c, SpaceKind::LM, 10, opt);
    g.require(gap < 0.05, fmt("ex44 lm profile off by %.3g", gap));

    StudyOptions raw = opt;
    raw.recon.auto_suppress = false;
    double rlm_raw = profile_gap(c, SpaceKind::RLM, 10, raw);
    double rlm_sup = profile_gap(c, SpaceKind::RLM, 10, opt);
    g.require(rlm_sup < rlm_raw,
              fmt("suppression did not help: %.3g vs %.3g", rlm_sup, rlm_raw));
  }

  {
    double gap = profile_gap(get_case("ex45"), SpaceKind::LM, 20, opt);
    g.require(gap < 0.05, fmt("ex45 lm profile off by %.3g", gap));
  }

  {
    BenchmarkCase c = get_case("ex43_1000");
    ProfileData coarse, fine, ref;
    profile_gap(c, SpaceKind::RLM, 10, opt, &coarse);
    double kink_c = profile_rel_l1(coarse, reference_profile(c, coarse.mesh, opt));
    profile_gap(c, SpaceKind::RLM, 50, opt, &fine);
    double kink_f = profile_rel_l1(fine, reference_profile(c, fine.mesh, opt));
    g.require(kink_f < kink_c,
              fmt("kink artifact did not shrink under refinement: %.3g vs %.3g", kink_f, kink_c));
  }

  for (double eps : {1.0, std::pow(2.0, -6), std::pow(2.0, -10), std::pow(2.0, -14)}) {
    BenchmarkCase c = get_case("ex47", eps);
    double gap = profile_gap(c, SpaceKind::LM, 40, opt);
    g.require(gap < 0.05, fmt("ex47 lm profile off by %.3g at eps=%.3g", gap, eps));
    if (eps < 1e-4) {
      ProfileData p0, ref;
      profile_gap(c, SpaceKind::P0, 40, opt, &p0, &ref);
      double pmax = 0.0, rmax = 0.0;
      for (double v : p0.scalar) pmax = std::max(pmax, std::abs(v));
      for (double v : ref.scalar) rmax = std::max(rmax, std::abs(v));
      g.require(pmax <= 0.2 * rmax,
                fmt("p0 did not collapse in the limit: max %.3g vs ref %.3g", pmax, rmax));
    }
  }
  verdict(5, "fixed-data profiles track fine references within 5% (plus limit behavior)", g);
}

// ---- property batch and dense-oracle equivalence ----------------------------

double rel_err(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  return (got - want).norm() / (1.0 + want.norm());
}

Vec expand(const FluxSolution& sol) {
  const Layout& lay = sol.lay;
  Vec full = Vec::Zero(lay.full_dim());
  for (int l = 0; l < lay.n_omega; ++l)
    for (int p = 0; p < lay.n_x; ++p) {
      full[lay.full(l, p, 0)] = sol.psi0[lay.a0(l, p)];
      for (int s = 0; s < lay.n_s(); ++s)
        full[lay.full(l, p, s + 1)] = sol.psi1[lay.a1(l, p, s)];
    }
  return full;
}

void oracle_equivalence(Gate& g, const ProblemSpec& prob, const CartesianMesh& mesh,
                        const AngularQuadrature& quad, SpaceKind space, const char* tag) {
  SolverConfig cfg;
  cfg.rtol = 1e-13;
  cfg.restart = 60;

  BlockSystem sys(prob, mesh, quad, space);
  oracle::DenseSystem ds = oracle::build(prob, mesh, quad, space);
  g.require(rel_err(dense_block(sys, "L"), ds.L) < 1e-10, std::string(tag) + " L block drift");
  g.require(rel_err(dense_block(sys, "M"), ds.M) < 1e-10, std::string(tag) + " M block drift");
  g.require(rel_err(dense_block(sys, "P"), ds.P) < 1e-10, std::string(tag) + " P block drift");
  g.require(rel_err(sys.rhs_full(), ds.q) < 1e-10, std::string(tag) + " rhs drift");

  Vec got, want;
  if (space == SpaceKind::RLM) {
    ReconstructionSpec rs;
    rs.stencil = 2;
    rs.auto_suppress = false;
    ReconstructionOps recon(sys, rs);
    got = expand(solve_rlmdg(sys, recon, cfg));
    want = oracle::solve_rlm(ds, prob, mesh, quad, 2);
  } else if (space == SpaceKind::LM) {
    got = expand(solve_lmdg(sys, cfg));
    want = oracle::solve_lm(ds, quad);
  } else {
    got = expand(solve_sndg(sys, cfg));
    want = oracle::solve_full(ds);
  }
  double d = (got - want).norm() / (1.0 + want.norm());
  g.require(d < 1e-10, std::string(tag) + fmt(" pipeline drift %.3g", d));
}

void criteria_6_7() {
  CheckReport rep = run_checks();
  std::printf("%s", format_report(rep).c_str());
  std::fflush(stdout);

  auto group = [&](std::initializer_list<const char*> prefixes) {
    Gate g;
    for (const auto& r : rep.results)
      for (const char* p : prefixes)
        if (r.name.rfind(p, 0) == 0)
          g.require(r.pass, r.name + fmt(" value %.3g vs tol %.3g", r.value, r.tol));
    return g;
  };

  verdict(6, "a: quadrature moment identities at 1e-12", group({"quadrature.moments."}));

  {
    Gate g;
    AngularQuadrature q1d = gauss_legendre_slab(4);
    ExactSolution ex;
    ex.value = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return std::cos(x[0] + w[0]);
    };
    ex.dx = [](const std::array<double, 2>& w, const std::array<double, 2>& x) {
      return -std::sin(x[0] + w[0]);
    };
    ex.dy = zero_fn();
    ProblemSpec p1d = manufactured_problem(ex, 1.0, 1.0, 1.0, q1d);
    CartesianMesh m1d = build_mesh_1d(0.0, 1.0, 6);
    for (SpaceKind s : {SpaceKind::P0, SpaceKind::P1, SpaceKind::LM, SpaceKind::RLM})
      oracle_equivalence(g, p1d, m1d, q1d, s, ("1d " + space_name(s)).c_str());

    AngularQuadrature q2d = quadrature_from_points(
        2,
        {{0.5773502691896258, 0.5773502691896258},
         {-0.5773502691896258, 0.5773502691896258},
         {0.5773502691896258, -0.5773502691896258},
         {-0.5773502691896258, -0.5773502691896258}},
        {0.25, 0.25, 0.25, 0.25});
    ExactSolution ex2;
    ex2.value = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return std::sin(x[0] + x[1]);
    };
    ex2.dx = [](const std::array<double, 2>&, const std::array<double, 2>& x) {
      return std::cos(x[0] + x[1]);
    };
    ex2.dy = ex2.dx;
    ProblemSpec p2d = manufactured_problem(ex2, 1.0, 2.0, 0.5, q2d);
    CartesianMesh m2d = build_mesh_2d(0.0, 1.0, 3, 0.0, 1.0, 2);
    for (SpaceKind s : {SpaceKind::Q1, SpaceKind::LM, SpaceKind::RLM})
      oracle_equivalence(g, p2d, m2d, q2d, s, ("2d " + space_name(s)).c_str());
    verdict(6, "b: matrix-free blocks and reduced pipelines match dense solves at 1e-10", g);
  }

  verdict(6, "c: slope-block operator symmetric at 1e-12 and Cholesky-positive",
          group({"b11."}));
  verdict(6, "d: energy certificate holds on absorbing vacuum-inflow solves",
          group({"energy."}));
  verdict(6, "e: assembled limit stencil equals the closed form at 1e-12",
          group({"limit.stencil"}));
  verdict(6, "f: slope isotropy, mean-free deviations, upwind-only reconstruction",
          group({"recon."}));

  {
    Gate g = group({"dofs."});
    DofReport lm = count_dofs(SpaceKind::LM, 2, 32, 100);
    g.require(lm.per_cell == 35 && lm.solution_dim == 3500 && lm.reduced_dim == 400,
              "lm 2d dof table mismatch");
    DofReport p1 = count_dofs(SpaceKind::P1, 2, 32, 100);
    g.require(p1.reduced_dim == 300, "p1 2d reduced size mismatch");
    verdict(7, "dof accounting matches the size tables exactly", g);
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_7();
  std::printf("%s: %d failing criteria\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures;
}
