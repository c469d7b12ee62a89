#include "voxsolv/distance.hpp"

#include <algorithm>
#include <limits>

namespace voxsolv {

namespace {

constexpr int64_t kFar = std::numeric_limits<int64_t>::max() / 4;

// One 1-D pass of the lower-envelope-of-parabolas squared distance transform.
// f holds squared distances sampled along a line; the result is
// d[q] = min_p (q - p)^2 + f[p].
void transform_line(const int64_t* f, int64_t* d, int m, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < m; ++q) {
    if (f[q] >= kFar) continue;
    while (true) {
      const int p = v[k];
      if (f[p] >= kFar) {
        // Only reachable while the envelope holds a single far parabola.
        --k;
        if (k < 0) break;
        continue;
      }
      const double s = (double(f[q] + int64_t(q) * q) -
                        double(f[p] + int64_t(p) * p)) /
                       (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
        if (k < 0) break;
      } else {
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
        break;
      }
    }
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -std::numeric_limits<double>::infinity();
      z[1] = std::numeric_limits<double>::infinity();
    }
  }
  k = 0;
  for (int q = 0; q < m; ++q) {
    while (z[k + 1] < q) ++k;
    const int p = v[k];
    d[q] = (f[p] >= kFar) ? kFar : int64_t(q - p) * (q - p) + f[p];
  }
}

}  // namespace

std::vector<int64_t> squared_distance_to_sign(const BinaryField& field,
                                              int8_t sign) {
  const Grid& g = field.grid;
  const int n = g.n;
  std::vector<int64_t> dist(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    dist[c] = (field.phi[c] == sign) ? 0 : kFar;
  }

  std::vector<int64_t> f(n), d(n);
  std::vector<int> v(n + 1);
  std::vector<double> z(n + 2);

  // Pass along x.
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      int64_t* row = &dist[g.linear_index(0, j, k)];
      std::copy(row, row + n, f.begin());
      transform_line(f.data(), d.data(), n, v.data(), z.data());
      std::copy(d.begin(), d.end(), row);
    }
  }
  // Pass along y.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) f[j] = dist[g.linear_index(i, j, k)];
      transform_line(f.data(), d.data(), n, v.data(), z.data());
      for (int j = 0; j < n; ++j) dist[g.linear_index(i, j, k)] = d[j];
    }
  }
  // Pass along z.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) f[k] = dist[g.linear_index(i, j, k)];
      transform_line(f.data(), d.data(), n, v.data(), z.data());
      for (int k = 0; k < n; ++k) dist[g.linear_index(i, j, k)] = d[k];
    }
  }

  if (sign == BinaryField::kSolvent) {
    // The exterior is all solvent; its nearest cell lies straight through the
    // closest wall, one step beyond the boundary layer.
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          const int wall = std::min({i + 1, n - i, j + 1, n - j, k + 1, n - k});
          int64_t& cur = dist[g.linear_index(i, j, k)];
          cur = std::min<int64_t>(cur, int64_t(wall) * wall);
        }
      }
    }
  }
  return dist;
}

}  // namespace voxsolv
