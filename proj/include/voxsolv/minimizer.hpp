#pragma once

#include <memory>
#include <vector>

#include "voxsolv/grid.hpp"
#include "voxsolv/heap.hpp"
#include "voxsolv/kernel.hpp"
#include "voxsolv/site_energy.hpp"

namespace voxsolv {

struct EnergyBreakdown {
  double surf = 0.0;
  double vdw = 0.0;
  double elec = 0.0;
  double total = 0.0;
  std::size_t flips = 0;
  double wall_time = 0.0;  // seconds spent flipping
};

// Energy change from flipping one cell, computed from scratch:
//   sum over j != i in kernel reach of phi_i phi_j w_ij
//   minus phi_i (G_vdw(i) + G_elec(i)).
// Positive when the flip raises the total.
double delta_g(const BinaryField& field, const KernelStencil& stencil,
               const SiteEnergies& site, std::size_t cell);

// Full energy of a field: pairwise surface term plus the site terms of every
// solvent cell plus the outside-box remainders carried in `site`.
EnergyBreakdown total_energy(const BinaryField& field,
                             const KernelStencil& stencil,
                             const SiteEnergies& site);

// Mutable descent state. Caches the flip cost of every cell ever touched and
// keeps, for each cached cell, the count of opposite-sign cells in kernel
// reach (virtual outside solvent included). The heap holds exactly the cells
// that are interface-adjacent (count > 0) and have a negative cached cost.
// Cached values are maintained incrementally and always equal the
// from-scratch delta_g of the current field.
class FlipState {
 public:
  FlipState(BinaryField field, const KernelStencil& stencil,
            const SiteEnergies& site);

  const BinaryField& field() const { return field_; }

  bool cache_valid(std::size_t cell) const { return valid_[cell] != 0; }
  double cached_delta_g(std::size_t cell) const { return dg_[cell]; }
  int opposite_count(std::size_t cell) const { return opp_[cell]; }
  bool interface_adjacent(std::size_t cell) const {
    return valid_[cell] && opp_[cell] > 0;
  }

  std::size_t heap_size() const { return heap_.size(); }
  bool heap_empty() const { return heap_.empty(); }
  std::size_t heap_top() const { return heap_.top(); }
  bool heap_contains(std::size_t cell) const { return heap_.contains(cell); }

  // Flip any cell (tests may force cells that are not at the heap root) and
  // restore every invariant: the cell's own cost negates, costs of cached
  // cells in reach shift by -2 phi_i phi_j w_ij with phi_i taken pre-flip,
  // newly interface-adjacent cells get computed and stored, and heap
  // membership is refreshed.
  void apply_flip(std::size_t cell);

  std::size_t flips() const { return flips_; }

  // Compute and store the cost and opposite count of a cell from the current
  // field; the driver uses it to seed the heap.
  void first_encounter(std::size_t cell);
  void refresh_heap(std::size_t cell);
  // Cache every interface-adjacent cell and fill the heap; establishes the
  // class invariants for a fresh field.
  void seed_from_interface();

 private:
  void scratch_cost(std::size_t cell, double* dg, int* opp) const;

  BinaryField field_;
  const KernelStencil* stencil_;
  const SiteEnergies* site_;
  std::vector<double> dg_;
  std::vector<uint8_t> valid_;
  std::vector<int32_t> opp_;
  IndexedMinHeap heap_;
  std::size_t flips_ = 0;
};

struct TraceEntry {
  std::size_t flip = 0;  // 0 is the initial state
  std::size_t cell = 0;
  double delta_g = 0.0;
  double energy = 0.0;
};

struct MinimizeOptions {
  std::size_t max_flips = 0;           // 0: 10 n^3
  std::size_t checkpoint_interval = 0; // 0: no mid-run from-scratch audits
  bool record_trace = true;
};

struct MinimizeResult {
  BinaryField field;
  EnergyBreakdown breakdown;           // recomputed from scratch at exit
  std::vector<TraceEntry> trace;
  double init_seconds = 0.0;
  double flip_seconds = 0.0;
  double worst_checkpoint_drift = 0.0; // |trace energy - from-scratch| / scale
};

// Greedy descent: seed the heap from every interface-adjacent cell, then
// repeatedly flip the most negative flip cost until none remains. The energy
// trace starts at the from-scratch total of the initial field and adds each
// extracted cost.
MinimizeResult minimize(BinaryField initial, const KernelStencil& stencil,
                        const SiteEnergies& site,
                        const MinimizeOptions& options = {});

struct LocalMinimumCertificate {
  bool is_minimum = true;
  std::size_t violations = 0;
  double worst = 0.0;       // most negative offending cost
  double tolerance = 0.0;   // 1e-9 * largest stencil weight
};

// Exhaustive exit audit: scan every interface-adjacent cell and recompute its
// flip cost from scratch.
LocalMinimumCertificate verify_local_minimum(const BinaryField& field,
                                             const KernelStencil& stencil,
                                             const SiteEnergies& site);

}  // namespace voxsolv
