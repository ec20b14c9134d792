#pragma once

#include <array>
#include <string>

namespace snlm {

// Trial/test space selector.  LM/RLM share the representation basis of the
// standard second-order space (linear in 1D, multilinear in 2D) but couple
// the slope coefficients across ordinates.
enum class SpaceKind { P0, P1, Q1, LM, RLM };

SpaceKind parse_space(const std::string& name);
std::string space_name(SpaceKind s);
inline bool is_reduced(SpaceKind s) { return s == SpaceKind::LM || s == SpaceKind::RLM; }

// Local basis size n_P of the representation space.
int local_size(SpaceKind s, int dim);

// Cell-local orthogonal basis on the reference cell [-1,1]^dim: monomials
// X^a Y^b with per-axis degrees <= 1.  r = 0 is the constant; r = axis+1 is
// the pure slope along `axis`; r = 3 (2D multilinear) is the cross term.
struct LocalBasis {
  int dim = 1;
  int n_p = 1;
  std::array<std::array<int, 2>, 4> deg{};  // deg[r] = (a, b)

  double eval(int r, double X, double Y) const {
    double v = 1.0;
    if (deg[r][0]) v *= X;
    if (deg[r][1]) v *= Y;
    return v;
  }
  // d/dX on the reference cell; physical gradient needs the 2/h factor.
  double deval(int r, int axis, double X, double Y) const {
    if (!deg[r][axis]) return 0.0;
    int other = 1 - axis;
    if (!deg[r][other]) return 1.0;
    return axis == 0 ? Y : X;
  }
  // integral of b_r^2 over the cell divided by the cell volume
  double mass_factor(int r) const {
    double f = 1.0;
    if (deg[r][0]) f /= 3.0;
    if (deg[r][1]) f /= 3.0;
    return f;
  }
};

LocalBasis make_local_basis(SpaceKind s, int dim);

}  // namespace snlm
