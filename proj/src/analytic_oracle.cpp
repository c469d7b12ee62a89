#include "voxsolv/analytic_oracle.hpp"

#include <cmath>
#include <numbers>

namespace voxsolv {

namespace {
constexpr double kPi = std::numbers::pi;

void check(const OneAtomParams& p, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("one-atom energy needs a positive radius");
  }
  if (!(p.sigma > 0.0) || !(p.epsilon >= 0.0)) {
    throw ConfigError("one-atom energy needs sigma > 0 and eps >= 0");
  }
}
}  // namespace

OneAtomEnergy one_atom_energy(const OneAtomParams& p, double radius) {
  check(p, radius);
  OneAtomEnergy e;
  const double r3 = radius * radius * radius;
  const double r9 = r3 * r3 * r3;
  const double s3 = p.sigma * p.sigma * p.sigma;
  const double s6 = s3 * s3;
  e.surf = 4.0 * kPi * radius * radius * p.phys.gamma0;
  e.vdw = 16.0 * kPi * p.phys.rho_w * p.epsilon *
          (s6 * s6 / (9.0 * r9) - s6 / (3.0 * r3));
  e.elec = p.phys.coulomb_k * p.charge * p.charge / (2.0 * radius) *
           (1.0 / p.phys.eps_w - 1.0 / p.phys.eps_m);
  e.total = e.surf + e.vdw + e.elec;
  return e;
}

double one_atom_energy_derivative(const OneAtomParams& p, double radius) {
  check(p, radius);
  const double r2 = radius * radius;
  const double r4 = r2 * r2;
  const double r10 = r4 * r4 * r2;
  const double s3 = p.sigma * p.sigma * p.sigma;
  const double s6 = s3 * s3;
  const double d_surf = 8.0 * kPi * p.phys.gamma0 * radius;
  const double d_vdw =
      16.0 * kPi * p.phys.rho_w * p.epsilon * (s6 / r4 - s6 * s6 / r10);
  const double d_elec = -p.phys.coulomb_k * p.charge * p.charge / (2.0 * r2) *
                        (1.0 / p.phys.eps_w - 1.0 / p.phys.eps_m);
  return d_surf + d_vdw + d_elec;
}

OneAtomMinimum one_atom_minimize(const OneAtomParams& p, double lo,
                                 double hi) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw ConfigError("one-atom minimize needs 0 < lo < hi");
  }
  double dlo = one_atom_energy_derivative(p, lo);
  double dhi = one_atom_energy_derivative(p, hi);
  if (!(dlo < 0.0) || !(dhi > 0.0)) {
    throw ConfigError(
        "bracket does not contain an interior minimum (need a falling energy "
        "at lo and a rising energy at hi)");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at double resolution
    const double d = one_atom_energy_derivative(p, mid);
    if (d < 0.0) {
      lo = mid;
      dlo = d;
    } else {
      hi = mid;
      dhi = d;
    }
  }
  OneAtomMinimum m;
  m.radius = 0.5 * (lo + hi);
  m.energy = one_atom_energy(p, m.radius);
  return m;
}

}  // namespace voxsolv
