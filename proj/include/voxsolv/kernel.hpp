#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "voxsolv/grid.hpp"

namespace voxsolv {

// Compactly supported radial convolution kernels on [0, 1]:
//   sin_squared:  K(r) = sin^2(pi r)
//   cos_plus_one: K(r) = cos(pi r) + 1
//   tabulated:    piecewise-linear user table on [0, 1]
// K(r) = 0 for r >= 1 in all cases.
enum class KernelKind { sin_squared, cos_plus_one, tabulated };

struct KernelSpec {
  KernelKind kind = KernelKind::sin_squared;
  double size_param_c = 3.0;  // dimensionless; kappa = C sqrt(h)
  int dim = 3;
  // (r, K) samples for KernelKind::tabulated; r strictly increasing in [0, 1],
  // K >= 0.
  std::vector<std::pair<double, double>> table;

  double kappa_for(double h) const;
};

double kernel_value(const KernelSpec& spec, double r);

// Volume of the unit (d-1)-sphere factor: pi for d = 3, 2 for d = 2.
double dimension_constant(int dim);

// Integral of K(r) r^d over [0, 1], adaptive quadrature to 1e-10 relative.
double radial_moment(const KernelSpec& spec);

// Normalization turning the pairwise sum into an area:
// 1 / (kappa^{d+1} C_d integral_0^1 K(r) r^d dr).
double kernel_constant(const KernelSpec& spec, double kappa);

// All integer offsets o with |o| h <= kappa, weights
// w(o) = gamma0 * kernel_constant * h^6 * K(|o| h / kappa). The zero offset is
// included (its weight only matters for sums that exclude the center
// explicitly). Offsets are sorted by (dz, dy, dx) for memory locality and come
// in +/- pairs with equal weights.
struct KernelStencil {
  double h = 0.0;
  int n = 0;  // grid resolution the linear deltas were built for
  double kappa = 0.0;
  double gamma0 = 0.0;
  double normalization = 0.0;   // kernel_constant
  double radius_sq_cells = 0.0; // (kappa / h)^2
  int max_offset = 0;           // floor(kappa / h)

  std::vector<std::array<int, 3>> offsets;
  std::vector<int64_t> deltas;  // dx + dy n + dz n^2
  std::vector<double> weights;
  std::size_t center = 0;       // position of the zero offset

  double weight_total = 0.0;    // sum of all weights including the center
  double weight_max = 0.0;      // largest single weight
  double center_weight = 0.0;

  std::size_t size() const { return offsets.size(); }
};

// memory_cap_bytes bounds the stencil table footprint; kappa growing like
// C sqrt(h) makes the offset count explode at fine resolutions, and a clear
// error beats an OOM kill.
KernelStencil build_stencil(const KernelSpec& spec, const Grid& grid,
                            double gamma0,
                            std::size_t memory_cap_bytes = std::size_t(1)
                                                               << 31);

}  // namespace voxsolv
