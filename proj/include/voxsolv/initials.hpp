#pragma once

#include "voxsolv/grid.hpp"
#include "voxsolv/site_energy.hpp"

namespace voxsolv {

// Every cell solute; the descent then carves the solvent in from the box
// boundary.
BinaryField loose_initial(const Grid& grid);

// Union of per-atom balls: cell centers within lj_sigma of any atom are
// solute. Needs at least one atom; warns if the union digitizes to nothing.
BinaryField tight_initial(const Grid& grid, const AtomSet& atoms);

}  // namespace voxsolv
