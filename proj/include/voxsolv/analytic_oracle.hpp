#pragma once

#include "voxsolv/site_energy.hpp"

namespace voxsolv {

// Closed-form solvation energy of a single atom at the center of a spherical
// interface of radius R, with the solvent occupying everything outside:
//   surf = 4 pi R^2 gamma0
//   vdw  = 16 pi rho_w eps (sigma^12 / (9 R^9) - sigma^6 / (3 R^3))
//   elec = (k Q^2 / (2 R)) (1/eps_w - 1/eps_m)
struct OneAtomParams {
  PhysicalParams phys;
  double charge = 1.0;
  double sigma = 3.5;
  double epsilon = 0.3;
};

struct OneAtomEnergy {
  double surf = 0.0;
  double vdw = 0.0;
  double elec = 0.0;
  double total = 0.0;
};

OneAtomEnergy one_atom_energy(const OneAtomParams& p, double radius);

double one_atom_energy_derivative(const OneAtomParams& p, double radius);

struct OneAtomMinimum {
  double radius = 0.0;
  OneAtomEnergy energy;
};

// Radius minimizing the one-atom energy inside [lo, hi], located by bisecting
// the analytic derivative down to an interval below 1e-10 A. The bracket must
// contain an interior minimum (derivative negative at lo, positive at hi).
OneAtomMinimum one_atom_minimize(const OneAtomParams& p, double lo, double hi);

}  // namespace voxsolv
