#include "voxsolv/minimizer.hpp"

#include <algorithm>
#include <cmath>

#include "voxsolv/distance.hpp"
#include "voxsolv/surface_area.hpp"

namespace voxsolv {

namespace {

void check_inputs(const BinaryField& field, const KernelStencil& st,
                  const SiteEnergies& site) {
  if (st.n != field.grid.n || st.h != field.grid.h) {
    throw ConfigError("stencil was built for a different grid");
  }
  if (site.g_vdw.size() != field.grid.cell_count() ||
      site.g_elec.size() != field.grid.cell_count()) {
    throw ConfigError("site energies were built for a different grid");
  }
}

}  // namespace

double delta_g(const BinaryField& field, const KernelStencil& st,
               const SiteEnergies& site, std::size_t cell) {
  check_inputs(field, st, site);
  const Grid& g = field.grid;
  const auto [i, j, k] = g.multi_index(cell);
  const int n = g.n;
  const int m = st.max_offset;
  const std::size_t noff = st.size();
  const double pc = field.phi[cell];

  double s = 0.0;
  if (i >= m && i < n - m && j >= m && j < n - m && k >= m && k < n - m) {
    for (std::size_t o = 0; o < noff; ++o) {
      s += st.weights[o] * double(field.phi[cell + st.deltas[o]]);
    }
  } else {
    for (std::size_t o = 0; o < noff; ++o) {
      const auto [dx, dy, dz] = st.offsets[o];
      s += st.weights[o] * double(field.sign_at(i + dx, j + dy, k + dz));
    }
  }
  s -= st.center_weight * pc;  // drop the self pair
  return pc * s - pc * (site.g_vdw[cell] + site.g_elec[cell]);
}

EnergyBreakdown total_energy(const BinaryField& field, const KernelStencil& st,
                             const SiteEnergies& site) {
  check_inputs(field, st, site);
  EnergyBreakdown e;
  e.surf = surface_energy(field, st);
  double vdw = 0.0;
  double elec = 0.0;
  for (std::size_t c = 0; c < field.grid.cell_count(); ++c) {
    if (field.phi[c] == BinaryField::kSolvent) {
      vdw += site.g_vdw[c];
      elec += site.g_elec[c];
    }
  }
  e.vdw = vdw + site.outside_vdw;
  e.elec = elec + site.outside_elec;
  e.total = e.surf + e.vdw + e.elec;
  return e;
}

FlipState::FlipState(BinaryField field, const KernelStencil& stencil,
                     const SiteEnergies& site)
    : field_(std::move(field)),
      stencil_(&stencil),
      site_(&site),
      dg_(field_.grid.cell_count(), 0.0),
      valid_(field_.grid.cell_count(), 0),
      opp_(field_.grid.cell_count(), 0),
      heap_(dg_.data(), field_.grid.cell_count()) {
  check_inputs(field_, stencil, site);
}

void FlipState::scratch_cost(std::size_t cell, double* dg, int* opp) const {
  const Grid& g = field_.grid;
  const KernelStencil& st = *stencil_;
  const auto [i, j, k] = g.multi_index(cell);
  const int n = g.n;
  const int m = st.max_offset;
  const std::size_t noff = st.size();
  const double pc = field_.phi[cell];

  double s = 0.0;
  int opposite = 0;
  if (i >= m && i < n - m && j >= m && j < n - m && k >= m && k < n - m) {
    const int8_t* phi = field_.phi.data();
    for (std::size_t o = 0; o < noff; ++o) {
      const int8_t p = phi[cell + st.deltas[o]];
      s += st.weights[o] * double(p);
      opposite += p != field_.phi[cell];
    }
  } else {
    for (std::size_t o = 0; o < noff; ++o) {
      const auto [dx, dy, dz] = st.offsets[o];
      const int8_t p = field_.sign_at(i + dx, j + dy, k + dz);
      s += st.weights[o] * double(p);
      opposite += p != field_.phi[cell];
    }
  }
  s -= st.center_weight * pc;
  *dg = pc * s - pc * (site_->g_vdw[cell] + site_->g_elec[cell]);
  *opp = opposite;  // the center compares equal and adds nothing
}

void FlipState::first_encounter(std::size_t cell) {
  double dg = 0.0;
  int opp = 0;
  scratch_cost(cell, &dg, &opp);
  dg_[cell] = dg;
  opp_[cell] = opp;
  valid_[cell] = 1;
}

void FlipState::seed_from_interface() {
  const auto d_solv = squared_distance_to_sign(field_, BinaryField::kSolvent);
  const auto d_solu = squared_distance_to_sign(field_, BinaryField::kSolute);
  for (std::size_t c = 0; c < field_.grid.cell_count(); ++c) {
    const int64_t dsq =
        field_.phi[c] == BinaryField::kSolute ? d_solv[c] : d_solu[c];
    if (double(dsq) <= stencil_->radius_sq_cells) {
      first_encounter(c);
      refresh_heap(c);
    }
  }
}

void FlipState::refresh_heap(std::size_t cell) {
  const bool wanted = valid_[cell] && opp_[cell] > 0 && dg_[cell] < 0.0;
  if (wanted) {
    if (heap_.contains(cell)) {
      heap_.update(cell);
    } else {
      heap_.insert(cell);
    }
  } else if (heap_.contains(cell)) {
    heap_.remove(cell);
  }
}

void FlipState::apply_flip(std::size_t cell) {
  const Grid& g = field_.grid;
  const KernelStencil& st = *stencil_;
  if (!valid_[cell]) first_encounter(cell);

  const int8_t pre = field_.phi[cell];
  field_.phi[cell] = static_cast<int8_t>(-pre);

  const auto [ci, cj, ck] = g.multi_index(cell);
  const int n = g.n;
  const int m = st.max_offset;
  const std::size_t noff = st.size();
  const bool interior = ci >= m && ci < n - m && cj >= m && cj < n - m &&
                        ck >= m && ck < n - m;

  for (std::size_t o = 0; o < noff; ++o) {
    if (o == st.center) continue;
    std::size_t nb;
    if (interior) {
      nb = cell + st.deltas[o];
    } else {
      const auto [dx, dy, dz] = st.offsets[o];
      const int ii = ci + dx, jj = cj + dy, kk = ck + dz;
      if (!g.contains(ii, jj, kk)) continue;
      nb = g.linear_index(ii, jj, kk);
    }
    const int8_t pj = field_.phi[nb];
    if (valid_[nb]) {
      // Cost shift from the flipped pair term, phi_i at its pre-flip sign.
      dg_[nb] -= 2.0 * double(pre) * double(pj) * st.weights[o];
      opp_[nb] += (pj == pre) ? 1 : -1;
      refresh_heap(nb);
    } else if (pj == pre) {
      // An uncached cell was not interface-adjacent; the flip just made this
      // one adjacent, so cache it now (post-flip field).
      first_encounter(nb);
      refresh_heap(nb);
    }
  }

  // The flipped cell: both cost terms change sign; every neighbor relation
  // toggles, so the opposite count complements against the full ball.
  dg_[cell] = -dg_[cell];
  opp_[cell] = static_cast<int32_t>(noff) - 1 - opp_[cell];
  refresh_heap(cell);
  ++flips_;
}

MinimizeResult minimize(BinaryField initial, const KernelStencil& stencil,
                        const SiteEnergies& site,
                        const MinimizeOptions& options) {
  check_inputs(initial, stencil, site);
  const Grid grid = initial.grid;

  if (initial.solute_touches_boundary()) {
    warn("solute touches the box boundary; the box may be too small for the "
         "final interface");
  }

  WallTimer init_timer;
  MinimizeResult result;

  FlipState state(std::move(initial), stencil, site);
  state.seed_from_interface();

  const EnergyBreakdown initial_energy =
      total_energy(state.field(), stencil, site);
  double energy = initial_energy.total;
  double kahan_carry = 0.0;
  if (options.record_trace) {
    result.trace.push_back({0, grid.cell_count(), 0.0, energy});
  }
  result.init_seconds = init_timer.seconds();

  WallTimer flip_timer;
  const std::size_t cap =
      options.max_flips ? options.max_flips : 10 * grid.cell_count();
  std::size_t flips = 0;
  while (!state.heap_empty()) {
    if (flips >= cap) {
      throw NumericError("flip cap exceeded (" + std::to_string(cap) +
                         "); the descent failed to terminate");
    }
    const std::size_t cell = state.heap_top();
    const double dg = state.cached_delta_g(cell);
    state.apply_flip(cell);
    ++flips;

    // Kahan-compensated running total keeps long traces honest.
    const double y = dg - kahan_carry;
    const double t = energy + y;
    kahan_carry = (t - energy) - y;
    energy = t;
    if (options.record_trace) {
      result.trace.push_back({flips, cell, dg, energy});
    }
    if (options.checkpoint_interval &&
        flips % options.checkpoint_interval == 0) {
      const EnergyBreakdown audit = total_energy(state.field(), stencil, site);
      const double scale =
          std::max({1.0, std::abs(audit.total), std::abs(energy)});
      result.worst_checkpoint_drift =
          std::max(result.worst_checkpoint_drift,
                   std::abs(audit.total - energy) / scale);
    }
  }
  result.flip_seconds = flip_timer.seconds();

  result.breakdown = total_energy(state.field(), stencil, site);
  result.breakdown.flips = flips;
  result.breakdown.wall_time = result.flip_seconds;
  result.field = state.field();
  return result;
}

LocalMinimumCertificate verify_local_minimum(const BinaryField& field,
                                             const KernelStencil& stencil,
                                             const SiteEnergies& site) {
  check_inputs(field, stencil, site);
  LocalMinimumCertificate cert;
  cert.tolerance = 1e-9 * stencil.weight_max;
  const auto d_solv = squared_distance_to_sign(field, BinaryField::kSolvent);
  const auto d_solu = squared_distance_to_sign(field, BinaryField::kSolute);
  for (std::size_t c = 0; c < field.grid.cell_count(); ++c) {
    const int64_t dsq =
        field.phi[c] == BinaryField::kSolute ? d_solv[c] : d_solu[c];
    if (double(dsq) > stencil.radius_sq_cells) continue;
    const double dg = delta_g(field, stencil, site, c);
    if (dg < -cert.tolerance) {
      cert.is_minimum = false;
      ++cert.violations;
      cert.worst = std::min(cert.worst, dg);
    }
  }
  return cert;
}

}  // namespace voxsolv
