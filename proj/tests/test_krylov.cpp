#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "snlm/krylov.hpp"

using namespace snlm;

namespace {

// diagonally dominant nonsymmetric matrix with a fixed seed
Eigen::MatrixXd test_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = dist(gen);
  for (int i = 0; i < n; ++i) a(i, i) += n;
  return a;
}

Vec test_rhs(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec b(n);
  for (int i = 0; i < n; ++i) b[i] = dist(gen);
  return b;
}

std::function<Vec(const Vec&)> matvec(const Eigen::MatrixXd& a) {
  return [&a](const Vec& v) -> Vec { return a * v; };
}

}  // namespace

TEST_SUITE("krylov") {
  TEST_CASE("solves a small dense system to the direct answer") {
    const int n = 24;
    auto a = test_matrix(n, 11);
    auto b = test_rhs(n, 12);
    SolverConfig cfg;
    cfg.rtol = 1e-12;
    auto res = gmres(matvec(a), b, cfg);
    CHECK(res.converged());
    Vec direct = a.fullPivLu().solve(b);
    CHECK((res.x - direct).norm() < 1e-9 * direct.norm());
    CHECK(res.residual <= 1e-11 * b.norm());
    CHECK(res.rhs_norm == doctest::Approx(b.norm()));
    CHECK(res.iterations <= n);
  }

  TEST_CASE("restarting still converges") {
    const int n = 40;
    auto a = test_matrix(n, 21);
    auto b = test_rhs(n, 22);
    SolverConfig cfg;
    cfg.rtol = 1e-10;
    cfg.restart = 5;
    auto res = gmres(matvec(a), b, cfg);
    CHECK(res.converged());
    CHECK((a * res.x - b).norm() <= 1e-9 * b.norm());
    CHECK(res.history.size() >= 1);
    CHECK(res.history.back() <= res.history.front());
  }

  TEST_CASE("identity converges immediately") {
    const int n = 10;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    auto b = test_rhs(n, 31);
    auto res = gmres(matvec(a), b, SolverConfig{});
    CHECK(res.converged());
    CHECK(res.iterations <= 1);
    CHECK((res.x - b).norm() < 1e-12 * b.norm());
  }

  TEST_CASE("iteration cap reports back") {
    const int n = 30;
    auto a = test_matrix(n, 41);
    auto b = test_rhs(n, 42);
    SolverConfig cfg;
    cfg.rtol = 1e-15;
    cfg.max_iters = 2;
    cfg.restart = 2;
    auto res = gmres(matvec(a), b, cfg);
    CHECK_FALSE(res.converged());
    CHECK(res.status == KrylovStatus::MaxIterations);
    CHECK(res.iterations == 2);
  }

  TEST_CASE("warm start from the exact answer finishes at once") {
    const int n = 16;
    auto a = test_matrix(n, 51);
    auto b = test_rhs(n, 52);
    Vec exact = a.fullPivLu().solve(b);
    auto res = gmres(matvec(a), b, SolverConfig{}, &exact);
    CHECK(res.converged());
    CHECK(res.iterations == 0);
    CHECK((res.x - exact).norm() < 1e-12 * exact.norm());
  }

  TEST_CASE("zero right-hand side returns zero") {
    const int n = 12;
    auto a = test_matrix(n, 61);
    Vec b = Vec::Zero(n);
    auto res = gmres(matvec(a), b, SolverConfig{});
    CHECK(res.converged());
    CHECK(res.x.norm() == 0.0);
  }

  TEST_CASE("status names are distinct") {
    CHECK(status_name(KrylovStatus::Converged) != status_name(KrylovStatus::Stagnated));
    CHECK(status_name(KrylovStatus::Converged) != status_name(KrylovStatus::MaxIterations));
  }
}
