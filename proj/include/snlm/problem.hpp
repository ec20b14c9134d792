#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "snlm/mesh.hpp"

namespace snlm {

using SpatialFn = std::function<double(const std::array<double, 2>&)>;
using AngularFn = std::function<double(const std::array<double, 2>& /*omega*/,
                                       const std::array<double, 2>& /*x*/)>;

// Axis-aligned box with constant cross sections.
struct MaterialRegion {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  double sigma_s = 0.0;
  double sigma_a = 0.0;
};

// Scaled transport problem: epsilon, piecewise-constant cross sections,
// source q(omega, x), inflow data alpha(omega, x) on the inflow boundary.
struct ProblemSpec {
  double epsilon = 1.0;
  std::vector<MaterialRegion> regions;  // must tile the domain, faces aligned
  AngularFn q;
  AngularFn alpha;

  static ProblemSpec constant(double eps, double sigma_s, double sigma_a, AngularFn q,
                              AngularFn alpha) {
    ProblemSpec ps;
    ps.epsilon = eps;
    ps.regions.push_back({{-1e300, -1e300}, {1e300, 1e300}, sigma_s, sigma_a});
    ps.q = std::move(q);
    ps.alpha = std::move(alpha);
    return ps;
  }

  const MaterialRegion& region_at(const std::array<double, 2>& x, int dim) const {
    for (const auto& r : regions) {
      bool in = true;
      for (int a = 0; a < dim; ++a) in = in && x[a] >= r.lo[a] && x[a] <= r.hi[a];
      if (in) return r;
    }
    throw std::runtime_error("point outside all material regions");
  }

  double min_sigma_s() const {
    double m = 1e300;
    for (const auto& r : regions) m = std::min(m, r.sigma_s);
    return m;
  }
  double min_sigma_a() const {
    double m = 1e300;
    for (const auto& r : regions) m = std::min(m, r.sigma_a);
    return m;
  }
};

// Per-cell cross sections sampled at cell centers, with the region-alignment
// check (a cell may not straddle a region boundary).
struct CellCrossSections {
  std::vector<double> sigma_s;
  std::vector<double> sigma_a;
};

CellCrossSections sample_cross_sections(const ProblemSpec& problem, const CartesianMesh& mesh);

inline AngularFn isotropic(SpatialFn f) {
  return [f = std::move(f)](const std::array<double, 2>&, const std::array<double, 2>& x) {
    return f(x);
  };
}

inline AngularFn zero_fn() {
  return [](const std::array<double, 2>&, const std::array<double, 2>&) { return 0.0; };
}

}  // namespace snlm
