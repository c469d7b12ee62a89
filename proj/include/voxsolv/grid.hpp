#pragma once

#include <cstdint>
#include <vector>

#include "voxsolv/common.hpp"

namespace voxsolv {

// Cell-centered cubic grid over the box [-a, a]^3, n cells per side, h = 2a/n.
// Cell (i, j, k) has center (-a + (i + 1/2) h, ...). Linear index is x-fastest:
// idx = i + j n + k n^2.
struct Grid {
  double half_width = 0.0;  // a
  int n = 0;
  double h = 0.0;

  Grid() = default;
  Grid(double a, int cells);

  std::size_t cell_count() const {
    return static_cast<std::size_t>(n) * n * n;
  }
  std::size_t linear_index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n) * (static_cast<std::size_t>(j) +
                                          static_cast<std::size_t>(n) * k);
  }
  std::array<int, 3> multi_index(std::size_t idx) const {
    const int i = static_cast<int>(idx % n);
    const int j = static_cast<int>((idx / n) % n);
    const int k = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    return {i, j, k};
  }
  bool contains(int i, int j, int k) const {
    return i >= 0 && i < n && j >= 0 && j < n && k >= 0 && k < n;
  }
  Vec3 cell_center(int i, int j, int k) const {
    return {-half_width + (i + 0.5) * h, -half_width + (j + 0.5) * h,
            -half_width + (k + 0.5) * h};
  }
};

// Binary voxel field: -1 solute (interior), +1 solvent (exterior). Anything
// outside the box counts as solvent; the solvent physically extends to
// infinity and the box is only a computational window.
struct BinaryField {
  static constexpr int8_t kSolute = -1;
  static constexpr int8_t kSolvent = +1;

  Grid grid;
  std::vector<int8_t> phi;

  BinaryField() = default;
  explicit BinaryField(const Grid& g, int8_t fill = kSolvent)
      : grid(g), phi(g.cell_count(), fill) {}

  int8_t at(std::size_t idx) const { return phi[idx]; }
  // Sign with the outside-is-solvent convention applied.
  int8_t sign_at(int i, int j, int k) const {
    return grid.contains(i, j, k) ? phi[grid.linear_index(i, j, k)] : kSolvent;
  }
  std::size_t solute_count() const;
  bool solute_touches_boundary() const;
};

// 6-connectivity flood labels over cells of the requested sign. Cells of the
// other sign get label -1. Labels are dense starting at 0 in scan order.
struct ComponentLabels {
  int count = 0;
  std::vector<int32_t> label;
};

ComponentLabels connected_components(const BinaryField& field, int8_t sign);

// Axis-aligned quad mesh separating solute from solvent, one quad per face
// between a -1 cell and a +1 cell (virtual solvent outside the box included,
// so the mesh is always closed). Quad corners are ordered so the implied
// normal points into the solvent.
struct QuadMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> quads;
};

QuadMesh extract_surface_mesh(const BinaryField& field);

}  // namespace voxsolv
