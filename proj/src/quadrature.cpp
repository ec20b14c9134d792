#include "snlm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace snlm {

namespace {

// Newton iteration on Legendre polynomials; standard Golub-Welsch is not
// needed at these sizes.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

AngularQuadrature gauss_legendre_slab(int n) {
  if (n < 2) throw std::invalid_argument("slab quadrature needs n >= 2");
  if (n % 2 != 0)
    throw std::invalid_argument("slab quadrature needs even n (odd n puts a node at mu = 0)");
  std::vector<double> x, w;
  legendre_rule(n, x, w);
  AngularQuadrature q;
  q.dim = 1;
  q.ordinates.resize(n);
  q.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    q.ordinates[j] = {x[j], 0.0};
    q.weights[j] = 0.5 * w[j];
  }
  return q;
}

AngularQuadrature product_sphere_disk(int n_polar, int n_azimuth) {
  if (n_polar < 2 || n_polar % 2 != 0)
    throw std::invalid_argument("polar count must be even and >= 2");
  if (n_azimuth < 4 || n_azimuth % 2 != 0)
    throw std::invalid_argument("azimuth count must be even and >= 4");
  std::vector<double> ct, w;
  legendre_rule(n_polar, ct, w);
  const double pi = std::acos(-1.0);
  AngularQuadrature q;
  q.dim = 2;
  for (int i = 0; i < n_polar; ++i) {
    double st = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
    for (int k = 0; k < n_azimuth; ++k) {
      double phi = 2.0 * pi * (k + 0.5) / n_azimuth;
      q.ordinates.push_back({st * std::cos(phi), st * std::sin(phi)});
      q.weights.push_back(0.5 * w[i] / n_azimuth);
    }
  }
  if (min_axis_component(q) <= 0.0)
    throw std::invalid_argument("product rule produced an axis-aligned ordinate");
  MomentReport rep = check_moments(q, 1e-12);
  if (!rep.pass) throw std::runtime_error("product rule failed the moment check at 1e-12");
  return q;
}

AngularQuadrature quadrature_from_points(int dim,
                                         std::vector<std::array<double, 2>> ordinates,
                                         std::vector<double> weights) {
  if (ordinates.empty()) throw std::invalid_argument("empty ordinate set");
  if (ordinates.size() != weights.size())
    throw std::invalid_argument("ordinate/weight count mismatch");
  AngularQuadrature q;
  q.dim = dim;
  q.ordinates = std::move(ordinates);
  q.weights = std::move(weights);
  for (double w : q.weights)
    if (w <= 0.0) throw std::invalid_argument("weights must be positive");
  if (min_axis_component(q) <= 0.0)
    throw std::invalid_argument("ordinate with a zero axis component");
  return q;
}

MomentReport check_moments(const AngularQuadrature& q, double tol) {
  MomentReport rep;
  double sw = 0.0;
  double s1[2] = {0.0, 0.0};
  double s2[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (int j = 0; j < q.n_omega(); ++j) {
    sw += q.weights[j];
    for (int a = 0; a < q.dim; ++a) {
      s1[a] += q.weights[j] * q.ordinates[j][a];
      for (int b = 0; b < q.dim; ++b)
        s2[a][b] += q.weights[j] * q.ordinates[j][a] * q.ordinates[j][b];
    }
  }
  rep.zeroth_residual = std::abs(sw - 1.0);
  double n1 = 0.0, n2 = 0.0;
  for (int a = 0; a < q.dim; ++a) {
    n1 += s1[a] * s1[a];
    for (int b = 0; b < q.dim; ++b) {
      double target = (a == b) ? 1.0 / 3.0 : 0.0;
      n2 = std::max(n2, std::abs(s2[a][b] - target));
    }
  }
  rep.first_residual = std::sqrt(n1);
  rep.second_residual = n2;

  rep.centrally_symmetric = true;
  for (int j = 0; j < q.n_omega() && rep.centrally_symmetric; ++j) {
    bool found = false;
    for (int k = 0; k < q.n_omega(); ++k) {
      double d = 0.0;
      for (int a = 0; a < q.dim; ++a)
        d += std::abs(q.ordinates[k][a] + q.ordinates[j][a]);
      if (d < 1e-13 && std::abs(q.weights[k] - q.weights[j]) < 1e-14) {
        found = true;
        break;
      }
    }
    rep.centrally_symmetric = found;
  }
  rep.pass = rep.zeroth_residual <= tol && rep.first_residual <= tol && rep.second_residual <= tol;
  return rep;
}

double min_axis_component(const AngularQuadrature& q) {
  double m = 1.0;
  for (int j = 0; j < q.n_omega(); ++j)
    for (int a = 0; a < q.dim; ++a) m = std::min(m, std::abs(q.ordinates[j][a]));
  return m;
}

std::string quadrature_csv(const AngularQuadrature& q) {
  std::string out = q.dim == 1 ? "mu,weight\n" : "omega_x,omega_y,weight\n";
  char buf[128];
  for (int j = 0; j < q.n_omega(); ++j) {
    if (q.dim == 1)
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", q.ordinates[j][0], q.weights[j]);
    else
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", q.ordinates[j][0], q.ordinates[j][1],
                    q.weights[j]);
    out += buf;
  }
  return out;
}

}  // namespace snlm
