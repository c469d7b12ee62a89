#include "voxsolv/area_study.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "voxsolv/surface_area.hpp"

namespace voxsolv {

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("slope needs at least two (x, y) points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

BinaryField digitized_sphere(const Grid& grid, Vec3 center, double radius) {
  BinaryField field(grid, BinaryField::kSolvent);
  const double r2 = radius * radius;
  for (int k = 0; k < grid.n; ++k) {
    for (int j = 0; j < grid.n; ++j) {
      for (int i = 0; i < grid.n; ++i) {
        if (norm_sq(grid.cell_center(i, j, k) - center) <= r2) {
          field.phi[grid.linear_index(i, j, k)] = BinaryField::kSolute;
        }
      }
    }
  }
  return field;
}

}  // namespace

std::vector<AreaStudyRow> run_area_study(const AreaStudyConfig& cfg,
                                         std::ostream* csv) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.n_step < 1 ||
      cfg.trials < 1) {
    throw ConfigError("area study needs 1 <= n_min <= n_max, step >= 1, "
                      "trials >= 1");
  }
  if (!(cfg.radius > 0.0) || !(cfg.radius < cfg.half_width)) {
    throw ConfigError("area study sphere must fit inside the box");
  }
  const double exact = 4.0 * std::numbers::pi * cfg.radius * cfg.radius;

  std::vector<AreaStudyRow> rows;
  std::vector<double> log_n, log_err;
  if (csv) {
    *csv << "n,h,kappa,trials,mean_rel_err,slope_so_far\n";
  }
  for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step) {
    const Grid grid(cfg.half_width, n);
    const KernelStencil stencil = build_stencil(cfg.kernel, grid, 1.0);

    std::unique_ptr<SurfaceConvolution> conv;
    if (cfg.use_fft) {
      conv = std::make_unique<SurfaceConvolution>(grid, stencil);
    }

    double err_sum = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::seed_seq seq{cfg.seed, uint64_t(n), uint64_t(trial)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> nudge(-0.5 * grid.h,
                                                   0.5 * grid.h);
      const Vec3 center{nudge(rng), nudge(rng), nudge(rng)};
      const BinaryField field = digitized_sphere(grid, center, cfg.radius);
      const double energy = cfg.use_fft ? conv->surface_energy(field)
                                        : surface_energy(field, stencil);
      const double area = energy / 1.0;  // stencil built with gamma0 = 1
      err_sum += std::abs(area - exact) / exact;
    }

    AreaStudyRow row;
    row.n = n;
    row.h = grid.h;
    row.kappa = stencil.kappa;
    row.trials = cfg.trials;
    row.mean_rel_err = err_sum / cfg.trials;
    log_n.push_back(std::log(double(n)));
    log_err.push_back(std::log(row.mean_rel_err));
    row.slope_so_far =
        log_n.size() >= 2 ? least_squares_slope(log_n, log_err) : 0.0;
    rows.push_back(row);
    if (csv) {
      *csv << row.n << ',' << row.h << ',' << row.kappa << ',' << row.trials
           << ',' << row.mean_rel_err << ',' << row.slope_so_far << '\n';
    }
  }
  return rows;
}

}  // namespace voxsolv
