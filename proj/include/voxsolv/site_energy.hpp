#pragma once

#include <string>
#include <vector>

#include "voxsolv/grid.hpp"

namespace voxsolv {

struct Atom {
  Vec3 pos;              // angstrom
  double charge = 0.0;   // elementary charges
  double lj_sigma = 0.0; // angstrom
  double lj_epsilon = 0.0;  // kBT
  std::string name;
};

using AtomSet = std::vector<Atom>;

struct PhysicalParams {
  double gamma0 = 0.174;   // surface tension, kBT / A^2
  double rho_w = 0.0333;   // solvent number density, 1 / A^3
  double eps_m = 1.0;      // relative permittivity, solute side
  double eps_w = 80.0;     // relative permittivity, solvent side
  double coulomb_k = 560.74;  // kBT A / e^2
};

// Per-cell energies a solvent cell contributes, plus the analytic remainder
// of the same integrals over everything beyond the box.
struct SiteEnergies {
  std::vector<double> g_vdw;
  std::vector<double> g_elec;
  double outside_vdw = 0.0;
  double outside_elec = 0.0;
};

// Lennard-Jones pair potential 4 eps ((sigma/r)^12 - (sigma/r)^6).
double lj_potential(double eps, double sigma, double r);

// Sum over atoms of Q_i (x - r_i) / |x - r_i|^3.
Vec3 coulomb_field_sum(const AtomSet& atoms, const PhysicalParams& params,
                       Vec3 x);

// Dielectric boundary energy density at a solvent point:
// (k / 8 pi) (1/eps_w - 1/eps_m) |coulomb_field_sum|^2.
double cfa_density(const AtomSet& atoms, const PhysicalParams& params, Vec3 x);

// Cells whose center lies this close to an atom center get the clamped
// van der Waals energy instead of an overflow-prone evaluation; the penalty
// keeps them out of the solvent for good.
inline constexpr double kSingularDistance = 1e-6;  // angstrom
inline constexpr double kClampEnergy = 1e12;       // kBT

// G_vdw(cell) = rho_w h^3 sum_j U_j(|x_cell - r_j|),
// G_elec(cell) = h^3 cfa_density(x_cell).
SiteEnergies precompute_site_energies(const Grid& grid, const AtomSet& atoms,
                                      const PhysicalParams& params,
                                      int threads = 1);

struct OutsideSampling {
  int n_theta = 64;
  int n_phi = 128;
  int n_radial = 64;
};

// Integrals of the vdW and electrostatic densities over the complement of the
// box, via the inverted-radius substitution rho = 1/r on the exterior of the
// inscribed sphere, masking out points that are still inside the box. Midpoint
// rule in all three variables. Atoms must sit strictly inside the box.
// Returns {vdw, elec}.
std::pair<double, double> outside_box_correction(const AtomSet& atoms,
                                                 const PhysicalParams& params,
                                                 double half_width,
                                                 const OutsideSampling& sampling = {});

}  // namespace voxsolv
