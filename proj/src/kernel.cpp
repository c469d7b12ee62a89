#include "voxsolv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace voxsolv {

namespace {

constexpr double kPi = std::numbers::pi;

void check_table(const KernelSpec& spec) {
  if (spec.kind != KernelKind::tabulated) return;
  if (spec.table.size() < 2) {
    throw ConfigError("tabulated kernel needs at least two samples");
  }
  for (std::size_t i = 0; i < spec.table.size(); ++i) {
    const auto& [r, k] = spec.table[i];
    if (r < 0.0 || r > 1.0 || k < 0.0 || !std::isfinite(r) ||
        !std::isfinite(k)) {
      throw ConfigError("tabulated kernel samples must have r in [0,1], K >= 0");
    }
    if (i > 0 && r <= spec.table[i - 1].first) {
      throw ConfigError("tabulated kernel radii must be strictly increasing");
    }
  }
}

// Assumes the table (if any) has already passed check_table.
double eval_kernel(const KernelSpec& spec, double r) {
  if (r >= 1.0) return 0.0;
  switch (spec.kind) {
    case KernelKind::sin_squared: {
      const double s = std::sin(kPi * r);
      return s * s;
    }
    case KernelKind::cos_plus_one:
      return std::cos(kPi * r) + 1.0;
    case KernelKind::tabulated: {
      const auto& t = spec.table;
      if (r <= t.front().first) return t.front().second;
      if (r >= t.back().first) return t.back().second;
      auto hi = std::upper_bound(
          t.begin(), t.end(), r,
          [](double x, const std::pair<double, double>& s) { return x < s.first; });
      auto lo = hi - 1;
      const double f = (r - lo->first) / (hi->first - lo->first);
      return lo->second + f * (hi->second - lo->second);
    }
  }
  throw ConfigError("unknown kernel kind");
}

}  // namespace

double KernelSpec::kappa_for(double h) const {
  return size_param_c * std::sqrt(h);
}

double kernel_value(const KernelSpec& spec, double r) {
  if (r < 0.0 || !std::isfinite(r)) {
    throw ConfigError("kernel argument must be finite and non-negative");
  }
  check_table(spec);
  return eval_kernel(spec, r);
}

double dimension_constant(int dim) {
  if (dim == 3) return kPi;
  if (dim == 2) return 2.0;
  throw ConfigError("kernel normalization supports dim 2 and 3 only");
}

double radial_moment(const KernelSpec& spec) {
  check_table(spec);
  const int d = spec.dim;
  auto f = [&](double r) { return eval_kernel(spec, r) * std::pow(r, d); };
  double err = 0.0;
  const double m =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, 0.0, 1.0, 12, 1e-12, &err);
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ConfigError("kernel radial moment must be positive");
  }
  return m;
}

double kernel_constant(const KernelSpec& spec, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ConfigError("kernel radius must be positive and finite");
  }
  const double m = radial_moment(spec);
  return 1.0 / (std::pow(kappa, spec.dim + 1) * dimension_constant(spec.dim) * m);
}

KernelStencil build_stencil(const KernelSpec& spec, const Grid& grid,
                            double gamma0, std::size_t memory_cap_bytes) {
  if (spec.dim != 3) {
    throw ConfigError("stencils are built for dim 3 only");
  }
  KernelStencil st;
  st.h = grid.h;
  st.n = grid.n;
  st.kappa = spec.kappa_for(grid.h);
  st.gamma0 = gamma0;
  if (st.kappa < grid.h) {
    throw ConfigError(
        "kernel radius smaller than the grid spacing; raise C or coarsen the "
        "grid so the stencil reaches past the center cell");
  }
  st.normalization = kernel_constant(spec, st.kappa);

  const double ratio = st.kappa / grid.h;
  st.radius_sq_cells = ratio * ratio;
  st.max_offset = static_cast<int>(std::floor(ratio));
  const int m = st.max_offset;

  const std::size_t ball_estimate =
      static_cast<std::size_t>(4.6 * (m + 1.0) * (m + 1.0) * (m + 1.0)) + 8;
  const std::size_t bytes_per_offset =
      sizeof(std::array<int, 3>) + sizeof(int64_t) + sizeof(double);
  if (ball_estimate * bytes_per_offset > memory_cap_bytes) {
    throw ConfigError(
        "stencil would need about " +
        std::to_string(ball_estimate * bytes_per_offset / (1u << 20)) +
        " MiB (cap " + std::to_string(memory_cap_bytes / (1u << 20)) +
        " MiB); lower C, coarsen the grid, or raise the cap");
  }

  const double h6 = std::pow(grid.h, 6);
  for (int dz = -m; dz <= m; ++dz) {
    for (int dy = -m; dy <= m; ++dy) {
      for (int dx = -m; dx <= m; ++dx) {
        const double osq = double(dx) * dx + double(dy) * dy + double(dz) * dz;
        if (osq > st.radius_sq_cells) continue;
        const double r = std::sqrt(osq) * grid.h / st.kappa;
        const double w =
            gamma0 * st.normalization * h6 * eval_kernel(spec, r);
        if (dx == 0 && dy == 0 && dz == 0) st.center = st.offsets.size();
        st.offsets.push_back({dx, dy, dz});
        st.deltas.push_back(int64_t(dx) + int64_t(dy) * grid.n +
                            int64_t(dz) * grid.n * grid.n);
        st.weights.push_back(w);
        st.weight_total += w;
        st.weight_max = std::max(st.weight_max, std::abs(w));
      }
    }
  }
  st.center_weight = st.weights[st.center];
  return st;
}

}  // namespace voxsolv
