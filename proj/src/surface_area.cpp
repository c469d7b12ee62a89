#include "voxsolv/surface_area.hpp"

#include <fftw3.h>

#include <cmath>

#include "voxsolv/distance.hpp"

namespace voxsolv {

namespace {

void check_stencil_grid(const Grid& g, const KernelStencil& st) {
  if (st.n != g.n || st.h != g.h) {
    throw ConfigError("stencil was built for a different grid");
  }
}

}  // namespace

double surface_energy(const BinaryField& field, const KernelStencil& st) {
  const Grid& g = field.grid;
  check_stencil_grid(g, st);
  const int n = g.n;
  const int m = st.max_offset;

  // Solute cells with no solvent in kernel reach contribute nothing.
  const auto dist_solv = squared_distance_to_sign(field, BinaryField::kSolvent);

  // 0/1 solvent indicator for the branch-free interior path.
  std::vector<uint8_t> solvent(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    solvent[c] = field.phi[c] == BinaryField::kSolvent;
  }

  const std::size_t noff = st.size();
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t c = g.linear_index(i, j, k);
        if (field.phi[c] != BinaryField::kSolute) continue;
        if (double(dist_solv[c]) > st.radius_sq_cells) continue;
        double acc = 0.0;
        if (i >= m && i < n - m && j >= m && j < n - m && k >= m && k < n - m) {
          for (std::size_t o = 0; o < noff; ++o) {
            acc += st.weights[o] * solvent[c + st.deltas[o]];
          }
        } else {
          for (std::size_t o = 0; o < noff; ++o) {
            const auto [dx, dy, dz] = st.offsets[o];
            const int ii = i + dx, jj = j + dy, kk = k + dz;
            if (g.contains(ii, jj, kk)) {
              acc += st.weights[o] * solvent[g.linear_index(ii, jj, kk)];
            } else {
              acc += st.weights[o];  // outside the box: solvent
            }
          }
        }
        total += acc;
      }
    }
  }
  return total;
}

double estimate_area(const BinaryField& field, const KernelStencil& st) {
  if (!(st.gamma0 != 0.0)) {
    throw ConfigError("area estimate needs a nonzero surface tension in the stencil");
  }
  return surface_energy(field, st) / st.gamma0;
}

namespace {

// Smallest size >= target whose factors are all in {2, 3, 5, 7}; FFT sizes
// with large prime factors are disproportionately slow.
int next_fast_size(int target) {
  for (int s = target;; ++s) {
    int r = s;
    for (int f : {2, 3, 5, 7}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return s;
  }
}

}  // namespace

struct SurfaceConvolution::Impl {
  Grid grid;
  int L = 0;           // padded side
  std::size_t real_count = 0;
  std::size_t cplx_count = 0;
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
  std::vector<std::complex<double>> kernel_fft;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (real_buf) fftw_free(real_buf);
    if (cplx_buf) fftw_free(cplx_buf);
  }
};

SurfaceConvolution::SurfaceConvolution(const Grid& grid,
                                       const KernelStencil& st)
    : impl_(std::make_unique<Impl>()) {
  check_stencil_grid(grid, st);
  Impl& im = *impl_;
  im.grid = grid;
  im.L = next_fast_size(grid.n + 2 * st.max_offset);
  const int L = im.L;
  im.real_count = std::size_t(L) * L * L;
  im.cplx_count = std::size_t(L) * L * (L / 2 + 1);
  im.real_buf = fftw_alloc_real(im.real_count);
  im.cplx_buf = fftw_alloc_complex(im.cplx_count);
  im.fwd = fftw_plan_dft_r2c_3d(L, L, L, im.real_buf, im.cplx_buf,
                                FFTW_ESTIMATE);
  im.bwd = fftw_plan_dft_c2r_3d(L, L, L, im.cplx_buf, im.real_buf,
                                FFTW_ESTIMATE);

  // Kernel image with wrapped (circular) offsets, then its transform.
  std::fill(im.real_buf, im.real_buf + im.real_count, 0.0);
  for (std::size_t o = 0; o < st.size(); ++o) {
    const auto [dx, dy, dz] = st.offsets[o];
    const std::size_t x = std::size_t((dx + L) % L);
    const std::size_t y = std::size_t((dy + L) % L);
    const std::size_t z = std::size_t((dz + L) % L);
    im.real_buf[x + std::size_t(L) * (y + std::size_t(L) * z)] = st.weights[o];
  }
  fftw_execute(im.fwd);
  im.kernel_fft.resize(im.cplx_count);
  for (std::size_t c = 0; c < im.cplx_count; ++c) {
    im.kernel_fft[c] = {im.cplx_buf[c][0], im.cplx_buf[c][1]};
  }
}

SurfaceConvolution::~SurfaceConvolution() = default;

double SurfaceConvolution::surface_energy(const BinaryField& field) {
  Impl& im = *impl_;
  const Grid& g = field.grid;
  if (g.n != im.grid.n || g.h != im.grid.h) {
    throw ConfigError("field does not match the grid this transform was built for");
  }
  const int n = g.n;
  const int L = im.L;

  // Solute indicator in the padded volume at offset 0.
  std::fill(im.real_buf, im.real_buf + im.real_count, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const int8_t* src = &field.phi[g.linear_index(0, j, k)];
      double* dst = &im.real_buf[std::size_t(j) * L + std::size_t(k) * L * L];
      for (int i = 0; i < n; ++i) {
        dst[i] = src[i] == BinaryField::kSolute ? 1.0 : 0.0;
      }
    }
  }
  fftw_execute(im.fwd);
  const double scale = 1.0 / double(im.real_count);
  for (std::size_t c = 0; c < im.cplx_count; ++c) {
    const std::complex<double> p =
        std::complex<double>(im.cplx_buf[c][0], im.cplx_buf[c][1]) *
        im.kernel_fft[c] * scale;
    im.cplx_buf[c][0] = p.real();
    im.cplx_buf[c][1] = p.imag();
  }
  fftw_execute(im.bwd);

  // real_buf now holds conv(u) = sum_i solute(i) w(u - i). The energy is the
  // sum of conv over every cell that is solvent or lies outside the box; all
  // terms are non-negative, so no cancellation.
  double total = 0.0;
  for (int z = 0; z < L; ++z) {
    for (int y = 0; y < L; ++y) {
      const double* row = &im.real_buf[std::size_t(y) * L + std::size_t(z) * L * L];
      const bool yz_in_box = y < n && z < n;
      if (!yz_in_box) {
        for (int x = 0; x < L; ++x) total += row[x];
        continue;
      }
      const int8_t* prow = &field.phi[g.linear_index(0, y, z)];
      for (int x = 0; x < n; ++x) {
        if (prow[x] == BinaryField::kSolvent) total += row[x];
      }
      for (int x = n; x < L; ++x) total += row[x];
    }
  }
  return total;
}

double surface_energy_fft(const BinaryField& field, const KernelStencil& st) {
  SurfaceConvolution conv(field.grid, st);
  return conv.surface_energy(field);
}

}  // namespace voxsolv
