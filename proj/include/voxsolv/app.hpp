#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "voxsolv/analytic_oracle.hpp"
#include "voxsolv/area_study.hpp"
#include "voxsolv/kernel.hpp"
#include "voxsolv/minimizer.hpp"
#include "voxsolv/site_energy.hpp"

namespace voxsolv {

// Shared knobs of the minimize and energy subcommands.
struct RunConfig {
  std::string atoms_path;
  double box_half_width = 5.0;
  int n = 100;
  std::string init = "tight";  // tight | loose | mask
  std::string mask_path;
  KernelSpec kernel;
  PhysicalParams phys;
  OutsideSampling outside;
  bool outside_corrections = true;
  // Required clearance between every atom and the box walls; negative asks
  // for the default 2 max(sigma) + kappa.
  double margin = -1.0;
  uint64_t seed = 20240406;
  int threads = 1;
  std::size_t max_flips = 0;
  std::size_t trace_stride = 1;
  std::string out_prefix;
};

struct RunReport {
  MinimizeResult result;
  AtomSet atoms;
  std::string energy_json;
};

// Validates the config (cheap checks first), runs the descent, writes
// PREFIX.energy.json, PREFIX.mask.bin, PREFIX.obj and PREFIX.trace.csv when a
// prefix is set, and returns the report.
RunReport run_minimize_command(const RunConfig& config);

// Recomputes the energy breakdown of a stored mask under the given
// parameters; returns the JSON report text.
std::string run_energy_command(const RunConfig& config);

struct OracleConfig {
  OneAtomParams params;
  double bracket_lo = 0.0;  // <= 0: sigma / 2
  double bracket_hi = 0.0;  // <= 0: 4 sigma
};

std::string run_oracle_command(const OracleConfig& config);

struct AreaCommandConfig {
  AreaStudyConfig study;
  std::string csv_path;
};

// Runs the convergence study, writes the CSV when a path is set, and returns
// a one-line summary (final slope and finest-grid error).
std::string run_area_command(const AreaCommandConfig& config);

// --threads fallback: VOXSOLV_THREADS, else 1.
int resolve_threads(int flag_value);

}  // namespace voxsolv
