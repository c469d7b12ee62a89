#include "voxsolv/grid.hpp"

#include <cstdio>
#include <map>

namespace voxsolv {

void warn(const std::string& msg) {
  std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

Grid::Grid(double a, int cells) : half_width(a), n(cells) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("grid half-width must be positive and finite");
  }
  if (cells < 1) {
    throw ConfigError("grid resolution must be at least 1 cell per side");
  }
  h = 2.0 * a / n;
}

std::size_t BinaryField::solute_count() const {
  std::size_t c = 0;
  for (int8_t p : phi) c += (p == kSolute);
  return c;
}

bool BinaryField::solute_touches_boundary() const {
  const int n = grid.n;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (i != 0 && i != n - 1 && j != 0 && j != n - 1 && k != 0 &&
            k != n - 1) {
          i = n - 2;  // interior row: only the two boundary cells matter
          continue;
        }
        if (phi[grid.linear_index(i, j, k)] == kSolute) return true;
      }
    }
  }
  return false;
}

ComponentLabels connected_components(const BinaryField& field, int8_t sign) {
  const Grid& g = field.grid;
  ComponentLabels out;
  out.label.assign(g.cell_count(), -1);
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < g.cell_count(); ++seed) {
    if (field.phi[seed] != sign || out.label[seed] >= 0) continue;
    const int32_t id = out.count++;
    out.label[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const auto [i, j, k] = g.multi_index(cur);
      const int di[6] = {1, -1, 0, 0, 0, 0};
      const int dj[6] = {0, 0, 1, -1, 0, 0};
      const int dk[6] = {0, 0, 0, 0, 1, -1};
      for (int m = 0; m < 6; ++m) {
        const int ii = i + di[m], jj = j + dj[m], kk = k + dk[m];
        if (!g.contains(ii, jj, kk)) continue;
        const std::size_t nb = g.linear_index(ii, jj, kk);
        if (field.phi[nb] == sign && out.label[nb] < 0) {
          out.label[nb] = id;
          stack.push_back(nb);
        }
      }
    }
  }
  return out;
}

namespace {

// Corner (ci, cj, ck) of the grid lattice, ci in [0, n], packed for welding.
int64_t corner_key(int n, int ci, int cj, int ck) {
  const int64_t m = n + 1;
  return (static_cast<int64_t>(ck) * m + cj) * m + ci;
}

}  // namespace

QuadMesh extract_surface_mesh(const BinaryField& field) {
  const Grid& g = field.grid;
  QuadMesh mesh;
  std::map<int64_t, int> corner_id;

  auto vertex = [&](int ci, int cj, int ck) {
    const int64_t key = corner_key(g.n, ci, cj, ck);
    auto it = corner_id.find(key);
    if (it != corner_id.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    corner_id.emplace(key, id);
    mesh.vertices.push_back({-g.half_width + ci * g.h, -g.half_width + cj * g.h,
                             -g.half_width + ck * g.h});
    return id;
  };

  // For each solute cell, emit a quad on every face whose neighbor is solvent
  // (or outside the box). Corner order: counterclockwise when viewed from the
  // solvent side, so normals point out of the solute.
  for (int k = 0; k < g.n; ++k) {
    for (int j = 0; j < g.n; ++j) {
      for (int i = 0; i < g.n; ++i) {
        if (field.phi[g.linear_index(i, j, k)] != BinaryField::kSolute)
          continue;
        // +x face: corners in the plane ci = i+1.
        if (field.sign_at(i + 1, j, k) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i + 1, j, k), vertex(i + 1, j + 1, k),
                                vertex(i + 1, j + 1, k + 1),
                                vertex(i + 1, j, k + 1)});
        }
        // -x face.
        if (field.sign_at(i - 1, j, k) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i, j, k), vertex(i, j, k + 1),
                                vertex(i, j + 1, k + 1), vertex(i, j + 1, k)});
        }
        // +y face.
        if (field.sign_at(i, j + 1, k) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i, j + 1, k), vertex(i, j + 1, k + 1),
                                vertex(i + 1, j + 1, k + 1),
                                vertex(i + 1, j + 1, k)});
        }
        // -y face.
        if (field.sign_at(i, j - 1, k) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i, j, k), vertex(i + 1, j, k),
                                vertex(i + 1, j, k + 1), vertex(i, j, k + 1)});
        }
        // +z face.
        if (field.sign_at(i, j, k + 1) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i, j, k + 1), vertex(i + 1, j, k + 1),
                                vertex(i + 1, j + 1, k + 1),
                                vertex(i, j + 1, k + 1)});
        }
        // -z face.
        if (field.sign_at(i, j, k - 1) == BinaryField::kSolvent) {
          mesh.quads.push_back({vertex(i, j, k), vertex(i, j + 1, k),
                                vertex(i + 1, j + 1, k), vertex(i + 1, j, k)});
        }
      }
    }
  }
  return mesh;
}

}  // namespace voxsolv
