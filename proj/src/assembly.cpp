#include "snlm/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace snlm {

namespace {

struct GaussPoint {
  double x;
  double w;
};

// Gauss-Legendre rules on [-1,1].  Three points integrate the local bilinear
// forms exactly; four points are used for the user-supplied source and inflow
// data.
std::vector<GaussPoint> gauss_rule(int n) {
  switch (n) {
    case 1:
      return {{0.0, 2.0}};
    case 2: {
      double a = 1.0 / std::sqrt(3.0);
      return {{-a, 1.0}, {a, 1.0}};
    }
    case 3: {
      double a = std::sqrt(3.0 / 5.0);
      return {{-a, 5.0 / 9.0}, {0.0, 8.0 / 9.0}, {a, 5.0 / 9.0}};
    }
    case 4: {
      double s = std::sqrt(6.0 / 5.0);
      double a = std::sqrt((3.0 - 2.0 * s) / 7.0), wa = (18.0 + std::sqrt(30.0)) / 36.0;
      double b = std::sqrt((3.0 + 2.0 * s) / 7.0), wb = (18.0 - std::sqrt(30.0)) / 36.0;
      return {{-b, wb}, {-a, wa}, {a, wa}, {b, wb}};
    }
    default:
      throw std::invalid_argument("unsupported Gauss rule size");
  }
}

void invert_small(const std::array<double, 16>& m, std::array<double, 16>& inv, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = m[i * 4 + j];
  Eigen::MatrixXd ai = a.inverse();
  if (!ai.allFinite()) throw std::runtime_error("singular transport block");
  inv.fill(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i * 4 + j] = ai(i, j);
}

}  // namespace

CellCrossSections sample_cross_sections(const ProblemSpec& problem, const CartesianMesh& mesh) {
  CellCrossSections xs;
  xs.sigma_s.resize(mesh.n_cells());
  xs.sigma_a.resize(mesh.n_cells());
  for (int p = 0; p < mesh.n_cells(); ++p) {
    auto c = mesh.center(p);
    const MaterialRegion& r = problem.region_at(c, mesh.dim);
    // a cell may not straddle a region interface
    int ix = mesh.cell_ix(p), iy = mesh.cell_iy(p);
    std::array<double, 2> lo = {mesh.edges_x[ix], mesh.dim == 2 ? mesh.edges_y[iy] : 0.0};
    std::array<double, 2> hi = {mesh.edges_x[ix + 1],
                                mesh.dim == 2 ? mesh.edges_y[iy + 1] : 0.0};
    for (int a = 0; a < mesh.dim; ++a) {
      double tol = 1e-12 * (std::abs(r.hi[a]) + std::abs(r.lo[a]) + 1.0);
      if (lo[a] < r.lo[a] - tol || hi[a] > r.hi[a] + tol)
        throw std::runtime_error("mesh cell straddles a material interface");
    }
    xs.sigma_s[p] = r.sigma_s;
    xs.sigma_a[p] = r.sigma_a;
  }
  return xs;
}

DofReport count_dofs(SpaceKind space, int dim, long long n_omega, long long n_cells) {
  DofReport rep;
  long long np = local_size(space, dim);
  if (is_reduced(space)) {
    rep.per_cell = n_omega + (np - 1);
    rep.solution_dim = n_cells * rep.per_cell;
    rep.reduced_dim = n_cells * np;  // cell averages + shared slopes
  } else {
    rep.per_cell = np * n_omega;
    rep.solution_dim = n_cells * rep.per_cell;
    rep.reduced_dim = n_cells * np;
  }
  return rep;
}

BlockSystem::BlockSystem(ProblemSpec problem, CartesianMesh mesh, AngularQuadrature quad,
                         SpaceKind space)
    : problem_(std::move(problem)),
      mesh_(std::move(mesh)),
      quad_(std::move(quad)),
      space_(space),
      basis_(make_local_basis(space, mesh_.dim)) {
  if (quad_.dim != mesh_.dim) throw std::invalid_argument("quadrature/mesh dimension mismatch");
  if (mesh_.dim == 2 && (!mesh_.uniform_axis(0) || !mesh_.uniform_axis(1)))
    throw std::invalid_argument("2D meshes must be uniform per axis");
  lay_ = Layout{quad_.n_omega(), mesh_.n_cells(), basis_.n_p};
  xs_ = sample_cross_sections(problem_, mesh_);

  // distinct (hx, hy, sigma_s, sigma_a) tuples
  std::map<std::array<double, 4>, int> seen;
  cell_sig_.resize(mesh_.n_cells());
  for (int p = 0; p < mesh_.n_cells(); ++p) {
    std::array<double, 4> key = {mesh_.hx(p), mesh_.hy(p), xs_.sigma_s[p], xs_.sigma_a[p]};
    auto [it, inserted] = seen.emplace(key, static_cast<int>(signatures_.size()));
    if (inserted) signatures_.push_back(key);
    cell_sig_[p] = it->second;
  }

  mass_.resize(static_cast<size_t>(mesh_.n_cells()) * lay_.n_p);
  for (int p = 0; p < mesh_.n_cells(); ++p)
    for (int r = 0; r < lay_.n_p; ++r)
      mass_[static_cast<size_t>(p) * lay_.n_p + r] = mesh_.volume(p) * basis_.mass_factor(r);

  build_local_ops();
  if (lay_.n_s() > 0) build_b11();
}

int BlockSystem::upwind_neighbor(int l, int cell, int axis) const {
  int side = quad_.omega(l, axis) > 0.0 ? -1 : +1;
  return mesh_.neighbor(cell, axis, side);
}

void BlockSystem::build_local_ops() {
  const int dim = mesh_.dim;
  const int np = lay_.n_p;
  const auto vol_gp = gauss_rule(3);
  ops_.assign(quad_.n_omega(), std::vector<LocalOps>(signatures_.size()));

  for (int l = 0; l < quad_.n_omega(); ++l) {
    for (size_t sg = 0; sg < signatures_.size(); ++sg) {
      const auto& [hx, hy, sigs, siga] = signatures_[sg];
      const double h[2] = {hx, hy};
      const double vol = dim == 1 ? hx : hx * hy;
      const double jac = vol / (dim == 1 ? 2.0 : 4.0);
      const double c = sigs / problem_.epsilon + problem_.epsilon * siga;
      LocalOps& op = ops_[l][sg];
      op.n_p = np;
      op.T.fill(0.0);
      for (auto& u : op.U) u.fill(0.0);

      // volume terms: -(b_trial, Omega . grad b_test) + c (b_trial, b_test)
      auto add_volume = [&](double X, double Y, double w) {
        for (int r = 0; r < np; ++r) {
          double grad = 0.0;
          for (int a = 0; a < dim; ++a)
            grad += quad_.omega(l, a) * (2.0 / h[a]) * basis_.deval(r, a, X, Y);
          for (int rp = 0; rp < np; ++rp)
            op.T[r * 4 + rp] -= w * jac * basis_.eval(rp, X, Y) * grad;
        }
      };
      if (dim == 1) {
        for (const auto& g : vol_gp) add_volume(g.x, 0.0, g.w);
      } else {
        for (const auto& gx : vol_gp)
          for (const auto& gy : vol_gp) add_volume(gx.x, gy.x, gx.w * gy.w);
      }
      for (int r = 0; r < np; ++r) op.T[r * 4 + r] += c * vol * basis_.mass_factor(r);

      // face terms with upwind traces: the outflow face takes the trial
      // function from this cell, the inflow face from the upwind neighbor.
      for (int a = 0; a < dim; ++a) {
        const double om = quad_.omega(l, a);
        const double s = om > 0.0 ? 1.0 : -1.0;
        const int t = 1 - a;
        const double face_jac = dim == 1 ? 1.0 : h[t] / 2.0;
        auto pt = [&](double onface, double tang) {
          std::array<double, 2> X{};
          X[a] = onface;
          X[t] = tang;
          return X;
        };
        auto face_int = [&](double side_test, double side_trial, int r, int rp) {
          if (dim == 1) {
            auto xt = pt(side_test, 0.0), xr = pt(side_trial, 0.0);
            return basis_.eval(r, xt[0], xt[1]) * basis_.eval(rp, xr[0], xr[1]);
          }
          double acc = 0.0;
          for (const auto& g : vol_gp) {
            auto xt = pt(side_test, g.x), xr = pt(side_trial, g.x);
            acc += g.w * basis_.eval(r, xt[0], xt[1]) * basis_.eval(rp, xr[0], xr[1]);
          }
          return acc;
        };
        for (int r = 0; r < np; ++r)
          for (int rp = 0; rp < np; ++rp) {
            op.T[r * 4 + rp] += std::abs(om) * face_jac * face_int(s, s, r, rp);
            // trial trace from the neighbor's downwind face (its +s side)
            op.U[a][r * 4 + rp] -= std::abs(om) * face_jac * face_int(-s, s, r, rp);
          }
      }

      invert_small(op.T, op.Tinv, np);
    }
  }
}

Vec BlockSystem::apply_L(const Vec& v) const {
  if (v.size() != lay_.full_dim()) throw std::invalid_argument("apply_L size mismatch");
  Vec out = Vec::Zero(lay_.full_dim());
  const int np = lay_.n_p;
  for (int l = 0; l < lay_.n_omega; ++l) {
    const double w = quad_.weights[l];
    for (int p = 0; p < lay_.n_x; ++p) {
      const LocalOps& op = local_ops(l, p);
      for (int r = 0; r < np; ++r) {
        double acc = 0.0;
        for (int rp = 0; rp < np; ++rp) acc += op.T[r * 4 + rp] * v[lay_.full(l, p, rp)];
        for (int a = 0; a < mesh_.dim; ++a) {
          int pu = upwind_neighbor(l, p, a);
          if (pu < 0) continue;
          for (int rp = 0; rp < np; ++rp) acc += op.U[a][r * 4 + rp] * v[lay_.full(l, pu, rp)];
        }
        out[lay_.full(l, p, r)] = w * acc;
      }
    }
  }
  return out;
}

Vec BlockSystem::apply_M(const Vec& phi) const {
  if (phi.size() != lay_.s_full_dim()) throw std::invalid_argument("apply_M size mismatch");
  Vec out(lay_.full_dim());
  for (int l = 0; l < lay_.n_omega; ++l) {
    const double w = quad_.weights[l];
    for (int p = 0; p < lay_.n_x; ++p) {
      const double k = w * sigma_s_over_eps(p);
      for (int r = 0; r < lay_.n_p; ++r)
        out[lay_.full(l, p, r)] = k * mass(p, r) * phi[lay_.sf(p, r)];
    }
  }
  return out;
}

Vec BlockSystem::apply_P(const Vec& v) const {
  if (v.size() != lay_.full_dim()) throw std::invalid_argument("apply_P size mismatch");
  Vec out = Vec::Zero(lay_.s_full_dim());
  for (int l = 0; l < lay_.n_omega; ++l) {
    const double w = quad_.weights[l];
    for (int p = 0; p < lay_.n_x; ++p)
      for (int r = 0; r < lay_.n_p; ++r) out[lay_.sf(p, r)] += w * v[lay_.full(l, p, r)];
  }
  return out;
}

// Generic sub-block application of L.  Row/col ranges select the constant
// ({0,1}) or slope ([1,n_p)) coefficients.
namespace {
struct Range {
  int lo, hi;
  int size() const { return hi - lo; }
};
}  // namespace

static Vec apply_L_block(const BlockSystem& sys, const Vec& v, Range rows, Range cols) {
  const Layout& lay = sys.layout();
  auto idx = [&](Range rg, int l, int p, int k) {
    int width = rg.size();
    return (l * lay.n_x + p) * width + k;
  };
  Vec out = Vec::Zero(static_cast<long>(lay.n_omega) * lay.n_x * rows.size());
  for (int l = 0; l < lay.n_omega; ++l) {
    const double w = sys.quad().weights[l];
    for (int p = 0; p < lay.n_x; ++p) {
      const LocalOps& op = sys.local_ops(l, p);
      for (int r = rows.lo; r < rows.hi; ++r) {
        double acc = 0.0;
        for (int rp = cols.lo; rp < cols.hi; ++rp)
          acc += op.T[r * 4 + rp] * v[idx(cols, l, p, rp - cols.lo)];
        for (int a = 0; a < sys.mesh().dim; ++a) {
          int pu = sys.upwind_neighbor(l, p, a);
          if (pu < 0) continue;
          for (int rp = cols.lo; rp < cols.hi; ++rp)
            acc += op.U[a][r * 4 + rp] * v[idx(cols, l, pu, rp - cols.lo)];
        }
        out[idx(rows, l, p, r - rows.lo)] = w * acc;
      }
    }
  }
  return out;
}

Vec BlockSystem::apply_L00(const Vec& v0) const {
  if (v0.size() != lay_.a0_dim()) throw std::invalid_argument("apply_L00 size mismatch");
  return apply_L_block(*this, v0, {0, 1}, {0, 1});
}
Vec BlockSystem::apply_L01(const Vec& v1) const {
  if (v1.size() != lay_.a1_dim()) throw std::invalid_argument("apply_L01 size mismatch");
  return apply_L_block(*this, v1, {0, 1}, {1, lay_.n_p});
}
Vec BlockSystem::apply_L10(const Vec& v0) const {
  if (v0.size() != lay_.a0_dim()) throw std::invalid_argument("apply_L10 size mismatch");
  return apply_L_block(*this, v0, {1, lay_.n_p}, {0, 1});
}
Vec BlockSystem::apply_L11(const Vec& v1) const {
  if (v1.size() != lay_.a1_dim()) throw std::invalid_argument("apply_L11 size mismatch");
  return apply_L_block(*this, v1, {1, lay_.n_p}, {1, lay_.n_p});
}

Vec BlockSystem::apply_M0(const Vec& x0) const {
  if (x0.size() != lay_.s0_dim()) throw std::invalid_argument("apply_M0 size mismatch");
  Vec out(lay_.a0_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p)
      out[lay_.a0(l, p)] = quad_.weights[l] * sigma_s_over_eps(p) * mass(p, 0) * x0[p];
  return out;
}

Vec BlockSystem::apply_M1(const Vec& x1) const {
  if (x1.size() != lay_.s1_dim()) throw std::invalid_argument("apply_M1 size mismatch");
  Vec out(lay_.a1_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p)
      for (int s = 0; s < lay_.n_s(); ++s)
        out[lay_.a1(l, p, s)] =
            quad_.weights[l] * sigma_s_over_eps(p) * mass(p, s + 1) * x1[lay_.s1(p, s)];
  return out;
}

Vec BlockSystem::apply_P0(const Vec& v0) const {
  if (v0.size() != lay_.a0_dim()) throw std::invalid_argument("apply_P0 size mismatch");
  Vec out = Vec::Zero(lay_.s0_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p) out[p] += quad_.weights[l] * v0[lay_.a0(l, p)];
  return out;
}

Vec BlockSystem::apply_P1(const Vec& v1) const {
  if (v1.size() != lay_.a1_dim()) throw std::invalid_argument("apply_P1 size mismatch");
  Vec out = Vec::Zero(lay_.s1_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p)
      for (int s = 0; s < lay_.n_s(); ++s)
        out[lay_.s1(p, s)] += quad_.weights[l] * v1[lay_.a1(l, p, s)];
  return out;
}

Vec BlockSystem::sigma_sum(const Vec& v1) const {
  if (v1.size() != lay_.a1_dim()) throw std::invalid_argument("sigma_sum size mismatch");
  Vec out = Vec::Zero(lay_.s1_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p)
      for (int s = 0; s < lay_.n_s(); ++s) out[lay_.s1(p, s)] += v1[lay_.a1(l, p, s)];
  return out;
}

Vec BlockSystem::sigma_copy(const Vec& x1) const {
  if (x1.size() != lay_.s1_dim()) throw std::invalid_argument("sigma_copy size mismatch");
  Vec out(lay_.a1_dim());
  for (int l = 0; l < lay_.n_omega; ++l)
    for (int p = 0; p < lay_.n_x; ++p)
      for (int s = 0; s < lay_.n_s(); ++s) out[lay_.a1(l, p, s)] = x1[lay_.s1(p, s)];
  return out;
}

Vec BlockSystem::rhs_full() const {
  const int dim = mesh_.dim;
  const int np = lay_.n_p;
  const auto gp = gauss_rule(4);
  Vec out = Vec::Zero(lay_.full_dim());
  for (int l = 0; l < lay_.n_omega; ++l) {
    const double w = quad_.weights[l];
    const std::array<double, 2> omega = quad_.ordinates[l];
    for (int p = 0; p < lay_.n_x; ++p) {
      const auto ctr = mesh_.center(p);
      const double h[2] = {mesh_.hx(p), mesh_.hy(p)};
      const double jac = mesh_.volume(p) / (dim == 1 ? 2.0 : 4.0);
      double q_acc[4] = {0.0, 0.0, 0.0, 0.0};
      auto add_q = [&](double X, double Y, double wq) {
        std::array<double, 2> x = {ctr[0] + 0.5 * h[0] * X,
                                   dim == 2 ? ctr[1] + 0.5 * h[1] * Y : 0.0};
        double qv = problem_.q(omega, x);
        for (int r = 0; r < np; ++r)
          q_acc[r] += wq * jac * problem_.epsilon * qv * basis_.eval(r, X, Y);
      };
      if (dim == 1) {
        for (const auto& g : gp) add_q(g.x, 0.0, g.w);
      } else {
        for (const auto& gx : gp)
          for (const auto& gy : gp) add_q(gx.x, gy.x, gx.w * gy.w);
      }
      // inflow boundary faces: -(alpha, (Omega . nu) b)
      for (int a = 0; a < dim; ++a) {
        const double om = omega[a];
        const int side = om > 0.0 ? -1 : +1;  // inflow side
        if (mesh_.neighbor(p, a, side) >= 0) continue;
        const int t = 1 - a;
        const double Xa = static_cast<double>(side);
        const double face_jac = dim == 1 ? 1.0 : h[t] / 2.0;
        auto add_alpha = [&](double tang, double wf) {
          std::array<double, 2> X{};
          X[a] = Xa;
          X[t] = tang;
          std::array<double, 2> x = {ctr[0] + 0.5 * h[0] * X[0],
                                     dim == 2 ? ctr[1] + 0.5 * h[1] * X[1] : 0.0};
          double av = problem_.alpha(omega, x);
          for (int r = 0; r < np; ++r)
            q_acc[r] += wf * face_jac * std::abs(om) * av * basis_.eval(r, X[0], X[1]);
        };
        if (dim == 1) {
          add_alpha(0.0, 1.0);
        } else {
          for (const auto& g : gp) add_alpha(g.x, g.w);
        }
      }
      for (int r = 0; r < np; ++r) out[lay_.full(l, p, r)] = w * q_acc[r];
    }
  }
  return out;
}

void BlockSystem::rhs_blocks(Vec& q0, Vec& q1) const {
  Vec full = rhs_full();
  split_blocks(lay_, full, q0, q1);
}

void BlockSystem::build_b11() {
  const int ns = lay_.n_s();
  const int n = lay_.s1_dim();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(n) * ns * (1 + 2 * mesh_.dim));
  for (int p = 0; p < lay_.n_x; ++p) {
    // diagonal block: sum_l w_l T11 - (sigma_s / eps) mass
    for (int s = 0; s < ns; ++s)
      for (int sp = 0; sp < ns; ++sp) {
        double acc = 0.0;
        for (int l = 0; l < lay_.n_omega; ++l)
          acc += quad_.weights[l] * local_ops(l, p).T[(s + 1) * 4 + (sp + 1)];
        if (s == sp) acc -= sigma_s_over_eps(p) * mass(p, s + 1);
        trips.emplace_back(lay_.s1(p, s), lay_.s1(p, sp), acc);
      }
    // neighbor blocks, grouped by the upwind direction of each ordinate
    for (int l = 0; l < lay_.n_omega; ++l) {
      const double w = quad_.weights[l];
      const LocalOps& op = local_ops(l, p);
      for (int a = 0; a < mesh_.dim; ++a) {
        int pu = upwind_neighbor(l, p, a);
        if (pu < 0) continue;
        for (int s = 0; s < ns; ++s)
          for (int sp = 0; sp < ns; ++sp)
            trips.emplace_back(lay_.s1(p, s), lay_.s1(pu, sp),
                               w * op.U[a][(s + 1) * 4 + (sp + 1)]);
      }
    }
  }
  b11_.resize(n, n);
  b11_.setFromTriplets(trips.begin(), trips.end());
  b11_.makeCompressed();

  b11_ldlt_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
  b11_ldlt_->compute(b11_);
  b11_spd_ = b11_ldlt_->info() == Eigen::Success && (b11_ldlt_->vectorD().array() > 0.0).all();
  if (!b11_spd_) {
    b11_lu_ = std::make_shared<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    b11_lu_->compute(b11_);
    if (b11_lu_->info() != Eigen::Success)
      throw std::runtime_error("slope-block factorization failed");
  }
}

Vec BlockSystem::b11_solve(const Vec& x1) const {
  if (lay_.n_s() == 0) throw std::logic_error("no slope block for this space");
  return b11_spd_ ? Vec(b11_ldlt_->solve(x1)) : Vec(b11_lu_->solve(x1));
}

Eigen::MatrixXd dense_block(const BlockSystem& sys, const std::string& name) {
  const Layout& lay = sys.layout();
  struct Spec {
    int rows, cols;
    std::function<Vec(const Vec&)> apply;
  };
  auto spec = [&]() -> Spec {
    if (name == "L")
      return {lay.full_dim(), lay.full_dim(), [&](const Vec& v) { return sys.apply_L(v); }};
    if (name == "M")
      return {lay.full_dim(), lay.s_full_dim(), [&](const Vec& v) { return sys.apply_M(v); }};
    if (name == "P")
      return {lay.s_full_dim(), lay.full_dim(), [&](const Vec& v) { return sys.apply_P(v); }};
    if (name == "L00")
      return {lay.a0_dim(), lay.a0_dim(), [&](const Vec& v) { return sys.apply_L00(v); }};
    if (name == "L01")
      return {lay.a0_dim(), lay.a1_dim(), [&](const Vec& v) { return sys.apply_L01(v); }};
    if (name == "L10")
      return {lay.a1_dim(), lay.a0_dim(), [&](const Vec& v) { return sys.apply_L10(v); }};
    if (name == "L11")
      return {lay.a1_dim(), lay.a1_dim(), [&](const Vec& v) { return sys.apply_L11(v); }};
    if (name == "M0")
      return {lay.a0_dim(), lay.s0_dim(), [&](const Vec& v) { return sys.apply_M0(v); }};
    if (name == "M1")
      return {lay.a1_dim(), lay.s1_dim(), [&](const Vec& v) { return sys.apply_M1(v); }};
    if (name == "P0")
      return {lay.s0_dim(), lay.a0_dim(), [&](const Vec& v) { return sys.apply_P0(v); }};
    if (name == "P1")
      return {lay.s1_dim(), lay.a1_dim(), [&](const Vec& v) { return sys.apply_P1(v); }};
    if (name == "Sigma")
      return {lay.s1_dim(), lay.a1_dim(), [&](const Vec& v) { return sys.sigma_sum(v); }};
    if (name == "SigmaT")
      return {lay.a1_dim(), lay.s1_dim(), [&](const Vec& v) { return sys.sigma_copy(v); }};
    if (name == "B11")
      return {lay.s1_dim(), lay.s1_dim(), [&](const Vec& v) { return sys.b11_mult(v); }};
    throw std::invalid_argument("unknown block name: " + name);
  }();
  Eigen::MatrixXd m(spec.rows, spec.cols);
  Vec e = Vec::Zero(spec.cols);
  for (int j = 0; j < spec.cols; ++j) {
    e[j] = 1.0;
    m.col(j) = spec.apply(e);
    e[j] = 0.0;
  }
  return m;
}

std::string triplet_dump(const Eigen::MatrixXd& m) {
  std::string out;
  char buf[80];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n", static_cast<long long>(i),
                    static_cast<long long>(j), m(i, j));
      out += buf;
    }
  return out;
}

}  // namespace snlm
