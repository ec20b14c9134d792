#include "snlm/basis.hpp"

#include <stdexcept>

namespace snlm {

SpaceKind parse_space(const std::string& name) {
  if (name == "p0") return SpaceKind::P0;
  if (name == "p1") return SpaceKind::P1;
  if (name == "q1") return SpaceKind::Q1;
  if (name == "lm") return SpaceKind::LM;
  if (name == "rlm") return SpaceKind::RLM;
  throw std::invalid_argument("unknown space: " + name);
}

std::string space_name(SpaceKind s) {
  switch (s) {
    case SpaceKind::P0: return "p0";
    case SpaceKind::P1: return "p1";
    case SpaceKind::Q1: return "q1";
    case SpaceKind::LM: return "lm";
    case SpaceKind::RLM: return "rlm";
  }
  return "?";
}

int local_size(SpaceKind s, int dim) {
  switch (s) {
    case SpaceKind::P0: return 1;
    case SpaceKind::P1: return dim + 1;
    case SpaceKind::Q1: return 1 << dim;
    case SpaceKind::LM:
    case SpaceKind::RLM: return 1 << dim;
  }
  return 1;
}

LocalBasis make_local_basis(SpaceKind s, int dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (dim == 1 && s == SpaceKind::Q1) s = SpaceKind::P1;
  LocalBasis b;
  b.dim = dim;
  b.n_p = local_size(s, dim);
  b.deg[0] = {0, 0};
  if (b.n_p > 1) b.deg[1] = {1, 0};
  if (b.n_p > 2) b.deg[2] = {0, 1};
  if (b.n_p > 3) b.deg[3] = {1, 1};
  return b;
}

}  // namespace snlm
