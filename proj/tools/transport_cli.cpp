#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snlm/checks.hpp"
#include "snlm/csv.hpp"

namespace fs = std::filesystem;
using namespace snlm;

namespace {

struct Options {
  std::string case_id;
  std::vector<std::string> schemes;
  std::string cells;  // "N" or "N,M"
  int ordinates = 0;
  double eps = -1.0;
  std::string stencil = "two";
  std::string suppress = "auto";
  double tol = 1e-10;
  int restart = 100;
  int max_iters = 5000;
  std::string out = "out";
  std::vector<double> eps_list;
  std::vector<int> ladder;
};

void add_common(CLI::App* cmd, Options& o, bool scheme_required) {
  cmd->add_option("--case", o.case_id, "Benchmark case id")
      ->check(CLI::IsMember(benchmark_ids()));
  auto* s = cmd->add_option("--scheme", o.schemes, "Scheme(s): p0, p1, q1, lm, rlm")
                ->check(CLI::IsMember({"p0", "p1", "q1", "lm", "rlm"}));
  if (scheme_required) s->required();
  cmd->add_option("--cells", o.cells, "Cells per axis, N or N,M");
  cmd->add_option("--ordinates", o.ordinates,
                  "Ordinate count (1D: Gauss points; 2D: polar count, azimuth = 2x)");
  cmd->add_option("--eps", o.eps, "Scaling parameter epsilon (case default if omitted)");
  cmd->add_option("--stencil", o.stencil, "Reconstruction stencil width")
      ->check(CLI::IsMember({"two", "three"}));
  cmd->add_option("--suppress", o.suppress,
                  "Reconstruction suppression: auto, none, or faces=x:0.5,y:1.0");
  cmd->add_option("--tol", o.tol, "Krylov relative tolerance");
  cmd->add_option("--restart", o.restart, "GMRES restart length");
  cmd->add_option("--max-iters", o.max_iters, "GMRES iteration cap");
  cmd->add_option("--out", o.out, "Output directory");
}

std::pair<int, int> parse_cells(const std::string& s) {
  if (s.empty()) return {0, -1};
  auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stoi(s), -1};
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

ReconstructionSpec make_recon(const Options& o) {
  ReconstructionSpec spec;
  spec.stencil = o.stencil == "three" ? 3 : 2;
  if (o.suppress == "auto") {
    spec.auto_suppress = true;
  } else if (o.suppress == "none") {
    spec.auto_suppress = false;
  } else if (o.suppress.rfind("faces=", 0) == 0) {
    spec.auto_suppress = false;
    std::string rest = o.suppress.substr(6);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t end = rest.find(',', pos);
      if (end == std::string::npos) end = rest.size();
      std::string item = rest.substr(pos, end - pos);
      auto colon = item.find(':');
      if (colon == std::string::npos || (item[0] != 'x' && item[0] != 'y'))
        throw CLI::ValidationError("--suppress", "expected faces=x:coord[,y:coord...]");
      spec.suppressed_faces.emplace_back(item[0] == 'x' ? 0 : 1,
                                         std::stod(item.substr(colon + 1)));
      pos = end + 1;
    }
  } else {
    throw CLI::ValidationError("--suppress", "expected auto, none, or faces=...");
  }
  return spec;
}

StudyOptions make_study(const Options& o) {
  StudyOptions opt;
  opt.solver.rtol = o.tol;
  opt.solver.restart = o.restart;
  opt.solver.max_iters = o.max_iters;
  opt.recon = make_recon(o);
  opt.ordinate_override = o.ordinates;
  opt.ladder = o.ladder;
  for (const auto& s : o.schemes) opt.schemes.push_back(parse_space(s));
  return opt;
}

Metadata base_metadata(const Options& o, const BenchmarkCase& c, const std::string& command) {
  Metadata m;
  m.set("command", command);
  m.set("case", c.id);
  m.set_num("eps", c.eps);
  m.set("stencil", o.stencil);
  m.set("suppress", o.suppress);
  m.set_num("tol", o.tol);
  m.set_int("restart", o.restart);
  m.set_int("max_iters", o.max_iters);
  AngularQuadrature quad = case_quadrature(c, o.ordinates);
  m.set_int("ordinates", quad.n_omega());
  return m;
}

int cmd_solve(const Options& o) {
  BenchmarkCase c = get_case(o.case_id, o.eps);
  StudyOptions opt = make_study(o);
  auto [nx, ny] = parse_cells(o.cells);
  SpaceKind scheme = parse_space(o.schemes.front());

  ProfileData prof = run_profile(c, scheme, nx, opt, ny);
  fs::create_directories(o.out);
  std::string stem = o.out + "/" + c.id + "_" + space_name(scheme) + "_profile";
  write_text(stem + ".csv", profile_csv(prof));

  Metadata meta = base_metadata(o, c, "solve");
  meta.set("scheme", space_name(scheme));
  meta.set_int("cells_x", prof.mesh.nx());
  meta.set_int("cells_y", prof.mesh.dim == 2 ? prof.mesh.ny() : 1);
  meta.set_int("iterations", prof.iterations);
  meta.set("status", prof.status);
  meta.write(stem + ".meta");

  std::printf("%s %s: %d cells, %d iterations, %s -> %s.csv\n", c.id.c_str(),
              space_name(scheme).c_str(), prof.mesh.n_cells(), prof.iterations,
              prof.status.c_str(), stem.c_str());
  return 0;
}

int cmd_convergence(const Options& o) {
  BenchmarkCase c = get_case(o.case_id, o.eps);
  StudyOptions opt = make_study(o);
  ErrorReport rep = run_convergence_study(c, opt);

  fs::create_directories(o.out);
  std::string stem = o.out + "/" + c.id + "_convergence";
  write_text(stem + ".csv", convergence_csv(rep));
  Metadata meta = base_metadata(o, c, "convergence");
  std::string schemes;
  if (o.schemes.empty()) {
    for (SpaceKind s : c.schemes) schemes += (schemes.empty() ? "" : ",") + space_name(s);
  } else {
    for (const auto& s : o.schemes) schemes += (schemes.empty() ? "" : ",") + s;
  }
  meta.set("schemes", schemes);
  meta.write(stem + ".meta");

  for (const auto& r : rep.rows) {
    if (std::isnan(r.order))
      std::printf("%-4s n=%4d  error=%.6e  order=  -    iters=%4d  dofs=%lld\n",
                  space_name(r.scheme).c_str(), r.cells, r.error, r.iterations, r.dofs);
    else
      std::printf("%-4s n=%4d  error=%.6e  order=%5.2f  iters=%4d  dofs=%lld\n",
                  space_name(r.scheme).c_str(), r.cells, r.error, r.order, r.iterations,
                  r.dofs);
  }
  std::printf("wrote %s.csv\n", stem.c_str());
  return 0;
}

int cmd_difflimit(const Options& o) {
  std::vector<double> eps_list = o.eps_list;
  if (eps_list.empty())
    eps_list = {1.0, std::pow(2.0, -6), std::pow(2.0, -10), std::pow(2.0, -14)};
  std::vector<std::string> schemes =
      o.schemes.empty() ? std::vector<std::string>{"p0", "p1", "q1", "lm", "rlm"} : o.schemes;

  fs::create_directories(o.out);
  CsvTable summary({"eps", "scheme", "cells", "rel_l1_vs_fine", "rel_l1_vs_limit",
                    "iterations", "status"});
  std::string case_id = o.case_id.empty() ? "ex47" : o.case_id;
  auto [nx, ny] = parse_cells(o.cells);

  for (double eps : eps_list) {
    BenchmarkCase c = get_case(case_id, eps);
    StudyOptions opt = make_study(o);
    opt.schemes.clear();
    ProfileData ref = reference_profile(c, case_mesh(c, nx, ny), opt);
    for (const auto& sname : schemes) {
      SpaceKind scheme = parse_space(sname);
      if (scheme == SpaceKind::Q1 && c.dim == 1) continue;
      ProfileData prof = run_profile(c, scheme, nx, opt, ny);
      double rel = profile_rel_l1(prof, ref);
      std::string limit_rel;
      if (c.exact_scalar) {
        double num = 0.0, den = 0.0;
        for (int p = 0; p < prof.mesh.n_cells(); ++p) {
          double vol = prof.mesh.volume(p);
          double ex = c.exact_scalar(prof.mesh.center(p));
          num += vol * std::abs(prof.scalar[p] - ex);
          den += vol * std::abs(ex);
        }
        limit_rel = csv_num(num / den);
      }
      char tag[64];
      std::snprintf(tag, sizeof(tag), "%s_%s_eps%g", c.id.c_str(), sname.c_str(), eps);
      write_text(o.out + "/" + tag + "_profile.csv", profile_csv(prof));
      summary.add_row({csv_num(eps), sname, csv_int(prof.mesh.n_cells()), csv_num(rel),
                       limit_rel, csv_int(prof.iterations), prof.status});
      std::printf("eps=%-10.4g %-4s rel_l1(fine)=%.4e  iters=%4d  %s\n", eps, sname.c_str(),
                  rel, prof.iterations, prof.status.c_str());
    }
  }
  std::string stem = o.out + "/" + case_id + "_difflimit";
  summary.write(stem + ".csv");
  BenchmarkCase c0 = get_case(case_id, eps_list.front());
  Metadata meta = base_metadata(o, c0, "difflimit");
  std::string eps_str;
  for (double e : eps_list) eps_str += (eps_str.empty() ? "" : ",") + csv_num(e);
  meta.set("eps_list", eps_str);
  meta.write(stem + ".meta");
  std::printf("wrote %s.csv\n", stem.c_str());
  return 0;
}

int cmd_checks() {
  CheckReport rep = run_checks();
  std::fputs(format_report(rep).c_str(), stdout);
  return rep.failures();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-ordinates DG transport solver with low-memory variants"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");

  Options o;
  auto* solve = app.add_subcommand("solve", "Single run, scalar-flux profile CSV");
  add_common(solve, o, true);
  auto* conv = app.add_subcommand("convergence", "Mesh ladder, error/order table CSV");
  add_common(conv, o, false);
  conv->add_option("--ladder", o.ladder, "Override the case mesh ladder");
  auto* diff = app.add_subcommand("difflimit", "Epsilon sweep against fine references");
  add_common(diff, o, false);
  diff->add_option("--eps-list", o.eps_list, "Epsilon values to sweep");
  auto* checks = app.add_subcommand("checks", "Property-test batch");
  (void)checks;

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (o.case_id.empty()) throw CLI::ValidationError("--case", "required for solve");
      return cmd_solve(o);
    }
    if (conv->parsed()) {
      if (o.case_id.empty()) throw CLI::ValidationError("--case", "required for convergence");
      return cmd_convergence(o);
    }
    if (diff->parsed()) return cmd_difflimit(o);
    return cmd_checks();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
