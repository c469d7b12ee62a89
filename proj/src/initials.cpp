#include "voxsolv/initials.hpp"

#include <algorithm>
#include <cmath>

namespace voxsolv {

BinaryField loose_initial(const Grid& grid) {
  return BinaryField(grid, BinaryField::kSolute);
}

BinaryField tight_initial(const Grid& grid, const AtomSet& atoms) {
  if (atoms.empty()) {
    throw ConfigError("tight initial needs at least one atom");
  }
  BinaryField field(grid, BinaryField::kSolvent);
  for (const Atom& a : atoms) {
    if (!(a.lj_sigma > 0.0)) {
      throw ConfigError("atom '" + a.name + "' needs lj_sigma > 0");
    }
    const double r = a.lj_sigma;
    // Index window covering the ball.
    const auto lo_idx = [&](double c) {
      return std::max(0, int(std::floor((c - r + grid.half_width) / grid.h - 0.5)));
    };
    const auto hi_idx = [&](double c) {
      return std::min(grid.n - 1,
                      int(std::ceil((c + r + grid.half_width) / grid.h - 0.5)));
    };
    const double r2 = r * r;
    for (int k = lo_idx(a.pos.z); k <= hi_idx(a.pos.z); ++k) {
      for (int j = lo_idx(a.pos.y); j <= hi_idx(a.pos.y); ++j) {
        for (int i = lo_idx(a.pos.x); i <= hi_idx(a.pos.x); ++i) {
          if (norm_sq(grid.cell_center(i, j, k) - a.pos) <= r2) {
            field.phi[grid.linear_index(i, j, k)] = BinaryField::kSolute;
          }
        }
      }
    }
  }
  if (field.solute_count() == 0) {
    warn("tight initial has no solute cells; the grid is too coarse for the "
         "atom radii");
  }
  return field;
}

}  // namespace voxsolv
