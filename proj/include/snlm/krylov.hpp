#pragma once

#include <functional>
#include <string>
#include <vector>

#include "snlm/layout.hpp"

namespace snlm {

struct SolverConfig {
  double rtol = 1e-10;
  int max_iters = 2000;
  int restart = 30;
};

enum class KrylovStatus { Converged, Stagnated, MaxIterations };

std::string status_name(KrylovStatus s);

struct KrylovResult {
  Vec x;
  int iterations = 0;
  double residual = 0.0;  // true residual norm at exit
  double rhs_norm = 0.0;
  KrylovStatus status = KrylovStatus::Converged;
  std::vector<double> history;  // estimated residual norm per iteration

  bool converged() const { return status == KrylovStatus::Converged; }
};

// Restarted GMRES with modified Gram-Schmidt and Givens rotations.  Stops on
// the relative residual ||r|| <= rtol*||b||, or on the backward-error test
// ||r|| <= rtol*(||b|| + ||A||_est*||x||) with ||A||_est taken from the
// Arnoldi column norms (the relative test is unattainable when ||b|| is far
// below the operator scale, e.g. deep in the diffusion regime).
KrylovResult gmres(const std::function<Vec(const Vec&)>& apply, const Vec& b,
                   const SolverConfig& cfg, const Vec* x0 = nullptr);

}  // namespace snlm
