#include <doctest.h>

#include <cmath>
#include <sstream>

#include "snlm/quadrature.hpp"

using namespace snlm;

namespace {

double moment_1d(const AngularQuadrature& q, int k) {
  double acc = 0.0;
  for (int l = 0; l < q.n_omega(); ++l) acc += q.weights[l] * std::pow(q.omega(l, 0), k);
  return acc;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("slab rule integrates polynomials to machine precision") {
    for (int n : {2, 4, 8, 16, 32}) {
      CAPTURE(n);
      auto q = gauss_legendre_slab(n);
      REQUIRE(q.n_omega() == n);
      // weights absorb the 1/2 average: integral of mu^k / 2 over [-1,1]
      for (int k = 0; k <= 2 * n - 1; ++k) {
        const double want = (k % 2 == 0) ? 1.0 / (k + 1) : 0.0;
        CHECK(std::abs(moment_1d(q, k) - want) < 1e-13);
      }
      for (int l = 0; l < n; ++l) {
        CHECK(q.weights[l] > 0.0);
        CHECK(std::abs(q.omega(l, 0)) < 1.0);
      }
    }
  }

  TEST_CASE("slab rule rejects odd counts") {
    CHECK_THROWS(gauss_legendre_slab(3));
    CHECK_THROWS(gauss_legendre_slab(0));
  }

  TEST_CASE("sphere product rule has exact low moments and central symmetry") {
    for (auto [np, na] : {std::pair{2, 4}, {4, 8}, {6, 12}}) {
      CAPTURE(np);
      CAPTURE(na);
      auto q = product_sphere_disk(np, na);
      REQUIRE(q.n_omega() == np * na);
      double w = 0.0, mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
      for (int l = 0; l < q.n_omega(); ++l) {
        const double wl = q.weights[l], ox = q.omega(l, 0), oy = q.omega(l, 1);
        w += wl;
        mx += wl * ox;
        my += wl * oy;
        mxx += wl * ox * ox;
        myy += wl * oy * oy;
        mxy += wl * ox * oy;
      }
      CHECK(std::abs(w - 1.0) < 1e-14);
      CHECK(std::abs(mx) < 1e-14);
      CHECK(std::abs(my) < 1e-14);
      CHECK(std::abs(mxx - 1.0 / 3.0) < 1e-14);
      CHECK(std::abs(myy - 1.0 / 3.0) < 1e-14);
      CHECK(std::abs(mxy) < 1e-14);

      // every ordinate has its antipode with the same weight
      for (int l = 0; l < q.n_omega(); ++l) {
        bool found = false;
        for (int m = 0; m < q.n_omega(); ++m) {
          if (std::abs(q.omega(m, 0) + q.omega(l, 0)) < 1e-13 &&
              std::abs(q.omega(m, 1) + q.omega(l, 1)) < 1e-13) {
            found = true;
            CHECK(q.weights[m] == doctest::Approx(q.weights[l]));
          }
        }
        CHECK(found);
      }
      CHECK(min_axis_component(q) > 0.0);
    }
  }

  TEST_CASE("moment report flags good and corrupted rules") {
    for (int n : {4, 8, 16, 32}) {
      auto rep = check_moments(gauss_legendre_slab(n), 1e-12);
      CHECK(rep.pass);
      CHECK(rep.centrally_symmetric);
      CHECK(rep.zeroth_residual < 1e-14);
      CHECK(rep.first_residual < 1e-14);
      CHECK(rep.second_residual < 1e-13);
    }
    for (auto [np, na] : {std::pair{2, 4}, {4, 8}}) {
      auto rep = check_moments(product_sphere_disk(np, na), 1e-12);
      CHECK(rep.pass);
      CHECK(rep.centrally_symmetric);
    }

    auto bad = gauss_legendre_slab(4);
    bad.weights[0] += 1e-3;
    auto rep = check_moments(bad, 1e-12);
    CHECK_FALSE(rep.pass);
    CHECK(rep.zeroth_residual > 1e-4);
  }

  TEST_CASE("point-list construction validates its input") {
    std::vector<std::array<double, 2>> pts = {{{0.5, 0.0}}, {{-0.5, 0.0}}};
    std::vector<double> w = {0.5, 0.5};
    auto q = quadrature_from_points(1, pts, w);
    CHECK(q.n_omega() == 2);
    CHECK(q.omega(1, 0) == doctest::Approx(-0.5));

    CHECK_THROWS(quadrature_from_points(1, pts, {0.5}));
    CHECK_THROWS(quadrature_from_points(1, pts, {0.5, -0.5}));
    CHECK_THROWS(quadrature_from_points(1, {}, {}));
  }

  TEST_CASE("csv dump has one line per ordinate plus header") {
    auto q = gauss_legendre_slab(8);
    std::string csv = quadrature_csv(q);
    int lines = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 9);
    CHECK(csv.find(',') != std::string::npos);
  }
}
