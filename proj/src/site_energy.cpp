#include "voxsolv/site_energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace voxsolv {

namespace {
constexpr double kPi = std::numbers::pi;

void check_atoms(const AtomSet& atoms) {
  for (const Atom& a : atoms) {
    if (!(a.lj_sigma > 0.0) || !(a.lj_epsilon >= 0.0) ||
        !std::isfinite(a.pos.x) || !std::isfinite(a.pos.y) ||
        !std::isfinite(a.pos.z) || !std::isfinite(a.charge)) {
      throw ConfigError("atom '" + a.name +
                        "' has invalid parameters (need sigma > 0, eps >= 0, "
                        "finite position and charge)");
    }
  }
}

// Static contiguous chunks; each index is written by exactly one worker, so
// results are identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double lj_potential(double eps, double sigma, double r) {
  if (!(r > 0.0)) {
    throw ConfigError("Lennard-Jones potential needs r > 0");
  }
  const double s3 = (sigma / r) * (sigma / r) * (sigma / r);
  const double s6 = s3 * s3;
  return 4.0 * eps * (s6 * s6 - s6);
}

Vec3 coulomb_field_sum(const AtomSet& atoms, const PhysicalParams&, Vec3 x) {
  Vec3 e{};
  for (const Atom& a : atoms) {
    const Vec3 d = x - a.pos;
    const double r2 = norm_sq(d);
    if (!(r2 > 0.0)) {
      throw ConfigError("field evaluation point coincides with an atom center");
    }
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    e = e + (a.charge * inv_r3) * d;
  }
  return e;
}

double cfa_density(const AtomSet& atoms, const PhysicalParams& params, Vec3 x) {
  const Vec3 e = coulomb_field_sum(atoms, params, x);
  return params.coulomb_k / (8.0 * kPi) *
         (1.0 / params.eps_w - 1.0 / params.eps_m) * norm_sq(e);
}

SiteEnergies precompute_site_energies(const Grid& grid, const AtomSet& atoms,
                                      const PhysicalParams& params,
                                      int threads) {
  check_atoms(atoms);
  SiteEnergies site;
  site.g_vdw.assign(grid.cell_count(), 0.0);
  site.g_elec.assign(grid.cell_count(), 0.0);
  if (atoms.empty()) return site;

  const double h3 = grid.h * grid.h * grid.h;
  const double elec_prefactor = params.coulomb_k / (8.0 * kPi) *
                                (1.0 / params.eps_w - 1.0 / params.eps_m) * h3;
  const std::size_t n2 = std::size_t(grid.n) * grid.n;

  parallel_for(std::size_t(grid.n), threads, [&](std::size_t kz) {
    const int k = static_cast<int>(kz);
    for (int j = 0; j < grid.n; ++j) {
      for (int i = 0; i < grid.n; ++i) {
        const std::size_t c = std::size_t(i) + std::size_t(j) * grid.n + kz * n2;
        const Vec3 x = grid.cell_center(i, j, k);
        double u = 0.0;
        Vec3 e{};
        bool clamped = false;
        for (const Atom& a : atoms) {
          const Vec3 d = x - a.pos;
          const double r2 = norm_sq(d);
          if (r2 < kSingularDistance * kSingularDistance) {
            clamped = true;
            break;
          }
          const double s2 = a.lj_sigma * a.lj_sigma / r2;
          const double s6 = s2 * s2 * s2;
          u += 4.0 * a.lj_epsilon * (s6 * s6 - s6);
          const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
          e = e + (a.charge * inv_r3) * d;
        }
        if (clamped) {
          // A cell holding an atom center must never turn solvent.
          site.g_vdw[c] = kClampEnergy;
          site.g_elec[c] = 0.0;
        } else {
          site.g_vdw[c] = params.rho_w * h3 * u;
          site.g_elec[c] = elec_prefactor * norm_sq(e);
        }
      }
    }
  });
  return site;
}

std::pair<double, double> outside_box_correction(const AtomSet& atoms,
                                                 const PhysicalParams& params,
                                                 double half_width,
                                                 const OutsideSampling& s) {
  check_atoms(atoms);
  if (!(half_width > 0.0)) {
    throw ConfigError("outside-box correction needs a positive box half-width");
  }
  if (s.n_theta < 1 || s.n_phi < 1 || s.n_radial < 1) {
    throw ConfigError("outside-box sampling counts must be positive");
  }
  for (const Atom& a : atoms) {
    if (std::max({std::abs(a.pos.x), std::abs(a.pos.y), std::abs(a.pos.z)}) >=
        half_width) {
      throw ConfigError("atom '" + a.name +
                        "' is not strictly inside the box; the exterior "
                        "integrals would hit its singularity");
    }
  }
  if (atoms.empty()) return {0.0, 0.0};

  const double a = half_width;
  const double elec_prefactor = params.coulomb_k / (8.0 * kPi) *
                                (1.0 / params.eps_w - 1.0 / params.eps_m);
  const double d_theta = kPi / s.n_theta;
  const double d_phi = 2.0 * kPi / s.n_phi;
  const double d_rho = (1.0 / a) / s.n_radial;

  double vdw = 0.0;
  double elec = 0.0;
  for (int t = 0; t < s.n_theta; ++t) {
    const double theta = (t + 0.5) * d_theta;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    for (int p = 0; p < s.n_phi; ++p) {
      const double phi = (p + 0.5) * d_phi;
      const Vec3 dir{st * std::cos(phi), st * std::sin(phi), ct};
      double vdw_ray = 0.0;
      double elec_ray = 0.0;
      for (int q = 0; q < s.n_radial; ++q) {
        const double rho = (q + 0.5) * d_rho;
        const double r = 1.0 / rho;
        const Vec3 x = r * dir;
        // Between the inscribed sphere and the corners, part of each ray is
        // still inside the box; those samples belong to the interior sums.
        if (std::max({std::abs(x.x), std::abs(x.y), std::abs(x.z)}) <= a) {
          continue;
        }
        double u = 0.0;
        Vec3 e{};
        for (const Atom& at : atoms) {
          const Vec3 d = x - at.pos;
          const double r2 = norm_sq(d);
          const double s2 = at.lj_sigma * at.lj_sigma / r2;
          const double s6 = s2 * s2 * s2;
          u += 4.0 * at.lj_epsilon * (s6 * s6 - s6);
          const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
          e = e + (at.charge * inv_r3) * d;
        }
        const double jac = 1.0 / (rho * rho * rho * rho);
        vdw_ray += u * jac;
        elec_ray += norm_sq(e) * jac;
      }
      vdw += vdw_ray * st;
      elec += elec_ray * st;
    }
  }
  const double cell = d_theta * d_phi * d_rho;
  return {params.rho_w * vdw * cell, elec_prefactor * elec * cell};
}

}  // namespace voxsolv
