#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "snlm/solvers.hpp"

namespace snlm {

enum class RefPolicy { ExactAngular, ExactScalar, FineReference };

// Closed-form angular solution with its spatial gradient, for fabricated
// sources.
struct ExactSolution {
  AngularFn value;
  AngularFn dx;
  AngularFn dy;
};

// A named test setup: domain, data, angular rule, mesh ladder, scheme list,
// and the error-reference policy.
struct BenchmarkCase {
  std::string id;
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 0.0};
  double eps = 1.0;

  // fixed-data problems
  std::vector<MaterialRegion> regions;
  AngularFn q;
  AngularFn alpha;

  // fabricated-solution problems (constant cross sections)
  std::optional<ExactSolution> exact;
  double sigma_s = 0.0;
  double sigma_a = 0.0;

  RefPolicy ref = RefPolicy::FineReference;
  SpatialFn exact_scalar;  // closed-form limit profile when known

  std::vector<int> ladder;  // cells per axis, coarse to fine
  int ordinates = 32;       // slab rule size (dim == 1)
  int polar = 4;            // product rule (dim == 2)
  int azimuth = 8;
  std::vector<SpaceKind> schemes;

  int fine_cells = 0;     // reference mesh resolution per axis
  int profile_cells = 0;  // default profile resolution per axis

  // piecewise-uniform 1D mesh joined at split_at (cells given per side)
  bool split_mesh = false;
  double split_at = 0.0;
  int split_left = 0;
  int split_right = 0;
  int fine_split_left = 0;
  int fine_split_right = 0;
};

std::vector<std::string> benchmark_ids();
// eps_override < 0 keeps the case default.
BenchmarkCase get_case(const std::string& id, double eps_override = -1.0);

AngularQuadrature case_quadrature(const BenchmarkCase& c, int ordinate_override = -1);
// cells == 0 picks the case profile default; split-mesh cases scale both
// sides by `cells` relative to the stated layout (cells = split_left).
CartesianMesh case_mesh(const BenchmarkCase& c, int cells_x, int cells_y = -1);
ProblemSpec case_problem(const BenchmarkCase& c, const AngularQuadrature& quad);

// Source and inflow data matching a closed-form angular solution: the source
// is the scaled residual of the exact solution (per ordinate, with the
// ordinate average taken under `quad`), the inflow trace is the solution
// itself.
ProblemSpec manufactured_problem(const ExactSolution& exact, double eps, double sigma_s,
                                 double sigma_a, const AngularQuadrature& quad);

// L1 norms with a fixed 4-point-per-axis cell rule.
double l1_error_angular(const BlockSystem& sys, const FluxSolution& sol, const AngularFn& exact);
double l1_error_scalar(const BlockSystem& sys, const FluxSolution& sol,
                       const SpatialFn& exact_scalar);
double l1_error_against(const BlockSystem& sys, const FluxSolution& sol,
                        const BlockSystem& ref_sys, const FluxSolution& ref);

struct ErrorRow {
  SpaceKind scheme = SpaceKind::P1;
  int cells = 0;
  double h = 0.0;
  double error = 0.0;
  double order = 0.0;  // NaN on the coarsest level
  int iterations = 0;
  long long dofs = 0;
  long long reduced_dim = 0;
  std::string status;
};

struct ErrorReport {
  std::string case_id;
  std::vector<ErrorRow> rows;
};

struct StudyOptions {
  SolverConfig solver;
  ReconstructionSpec recon;
  int ordinate_override = -1;
  std::vector<int> ladder;          // empty: case default
  std::vector<SpaceKind> schemes;   // empty: case default
};

ErrorReport run_convergence_study(const BenchmarkCase& c, const StudyOptions& opt = {});

struct ProfileData {
  std::string case_id;
  SpaceKind scheme = SpaceKind::P1;
  CartesianMesh mesh;
  std::vector<double> scalar;  // scalar flux at cell centers, cell order
  int iterations = 0;
  std::string status;
};

ProfileData run_profile(const BenchmarkCase& c, SpaceKind scheme, int cells_x,
                        const StudyOptions& opt = {}, int cells_y = -1);

// Fine-mesh reference (second-order space) sampled at the centers of
// `sample_mesh`.
ProfileData reference_profile(const BenchmarkCase& c, const CartesianMesh& sample_mesh,
                              const StudyOptions& opt = {});

// Relative L1 distance between two profiles on the same sample grid,
// volume-weighted, normalized by the reference.
double profile_rel_l1(const ProfileData& sol, const ProfileData& ref);

}  // namespace snlm
