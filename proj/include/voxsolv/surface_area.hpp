#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "voxsolv/grid.hpp"
#include "voxsolv/kernel.hpp"

namespace voxsolv {

// Pairwise interface energy: sum over solute cells i and solvent cells j with
// |x_j - x_i| <= kappa of the stencil weight w(j - i). Cells outside the box
// count as solvent. Exact double sum, evaluated only over solute cells that
// actually have a solvent cell in reach; deterministic ascending-index
// accumulation.
double surface_energy(const BinaryField& field, const KernelStencil& stencil);

// surface_energy / gamma0: the area estimate itself.
double estimate_area(const BinaryField& field, const KernelStencil& stencil);

// FFT-accelerated evaluation of the same double sum, used where the stencil
// is too large for the direct route (fine grids in the convergence study).
// Agrees with surface_energy to roundoff. Caching the kernel transform makes
// repeated fields on one grid cheap.
class SurfaceConvolution {
 public:
  SurfaceConvolution(const Grid& grid, const KernelStencil& stencil);
  ~SurfaceConvolution();
  SurfaceConvolution(const SurfaceConvolution&) = delete;
  SurfaceConvolution& operator=(const SurfaceConvolution&) = delete;

  double surface_energy(const BinaryField& field);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double surface_energy_fft(const BinaryField& field,
                          const KernelStencil& stencil);

}  // namespace voxsolv
