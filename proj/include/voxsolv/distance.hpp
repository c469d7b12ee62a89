#pragma once

#include <cstdint>
#include <vector>

#include "voxsolv/grid.hpp"

namespace voxsolv {

// Exact squared Euclidean distance, in cell units, from every cell to the
// nearest cell carrying the given sign. The virtual solvent outside the box
// participates when sign == +1: the nearest exterior cell sits one step past
// the closest wall. Cells already of the requested sign get distance 0.
std::vector<int64_t> squared_distance_to_sign(const BinaryField& field,
                                              int8_t sign);

}  // namespace voxsolv
