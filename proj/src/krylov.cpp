#include "snlm/krylov.hpp"

#include <cmath>

namespace snlm {

std::string status_name(KrylovStatus s) {
  switch (s) {
    case KrylovStatus::Converged:
      return "converged";
    case KrylovStatus::Stagnated:
      return "stagnated";
    default:
      return "max_iterations";
  }
}

KrylovResult gmres(const std::function<Vec(const Vec&)>& apply, const Vec& b,
                   const SolverConfig& cfg, const Vec* x0) {
  const Eigen::Index n = b.size();
  KrylovResult res;
  res.rhs_norm = b.norm();
  if (res.rhs_norm == 0.0) {
    res.x = Vec::Zero(n);
    res.status = KrylovStatus::Converged;
    return res;
  }

  Vec x = x0 ? *x0 : Vec(Vec::Zero(n));
  const int m = std::max(1, std::min<int>(cfg.restart, static_cast<int>(n)));
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
  Vec cs(m), sn(m), g(m + 1);

  double anorm_est = 0.0;
  double best_outer = -1.0;
  int iters = 0;

  auto backward_tol = [&](double xnorm) {
    return cfg.rtol * (res.rhs_norm + anorm_est * xnorm);
  };

  while (true) {
    Vec r = b - apply(x);
    double beta = r.norm();
    res.residual = beta;
    if (beta <= cfg.rtol * res.rhs_norm || beta <= backward_tol(x.norm())) {
      res.status = KrylovStatus::Converged;
      break;
    }
    if (iters >= cfg.max_iters) {
      res.status = KrylovStatus::MaxIterations;
      break;
    }
    if (best_outer >= 0.0 && beta >= best_outer * (1.0 - 1e-10)) {
      res.status = KrylovStatus::Stagnated;
      break;
    }
    best_outer = beta;

    const double xnorm_ref = x.norm();
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    int j = 0;
    for (; j < m && iters < cfg.max_iters; ++j) {
      Vec w = apply(V.col(j));
      ++iters;
      double colsq = 0.0;
      for (int i = 0; i <= j; ++i) {
        H(i, j) = V.col(i).dot(w);
        w -= H(i, j) * V.col(i);
      }
      H(j + 1, j) = w.norm();
      const double h_sub = H(j + 1, j);
      for (int i = 0; i <= j + 1; ++i) colsq += H(i, j) * H(i, j);
      anorm_est = std::max(anorm_est, std::sqrt(colsq));
      if (h_sub > 0.0) V.col(j + 1) = w / h_sub;
      // Givens update of column j
      for (int i = 0; i < j; ++i) {
        double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == 0.0) break;  // dependent column, drop it
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      double res_est = std::abs(g[j + 1]);
      res.history.push_back(res_est);
      if (res_est <= cfg.rtol * res.rhs_norm || res_est <= backward_tol(xnorm_ref) ||
          h_sub == 0.0) {
        ++j;
        break;
      }
    }
    if (j == 0) continue;  // let the outer checks classify the failure
    Vec y = H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    x += V.leftCols(j) * y;
  }

  res.x = std::move(x);
  res.iterations = iters;
  return res;
}

}  // namespace snlm
