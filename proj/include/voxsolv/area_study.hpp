#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "voxsolv/kernel.hpp"

namespace voxsolv {

// Sphere-area convergence protocol: for each resolution, digitize a sphere a
// few times with the center nudged by a sub-cell amount, estimate its area,
// and track the mean relative error against the exact value. The nudge
// averages out grid-phase artifacts; all randomness derives from the seed.
struct AreaStudyConfig {
  KernelSpec kernel;
  double half_width = 1.0;
  double radius = 0.5;
  int n_min = 20;
  int n_max = 200;
  int n_step = 5;
  int trials = 6;
  uint64_t seed = 20240406;
  bool use_fft = true;  // direct double sum otherwise
};

struct AreaStudyRow {
  int n = 0;
  double h = 0.0;
  double kappa = 0.0;
  int trials = 0;
  double mean_rel_err = 0.0;
  double slope_so_far = 0.0;  // log-log least-squares slope up to this row
};

// Slope of the least-squares line through (x, y); needs >= 2 points.
double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

// Runs the protocol; optionally streams CSV rows
// (n,h,kappa,trials,mean_rel_err,slope_so_far) as they complete.
std::vector<AreaStudyRow> run_area_study(const AreaStudyConfig& config,
                                         std::ostream* csv = nullptr);

}  // namespace voxsolv
