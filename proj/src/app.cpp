#include "voxsolv/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "voxsolv/initials.hpp"
#include "voxsolv/io.hpp"
#include "voxsolv/surface_area.hpp"

namespace voxsolv {

namespace {

using nlohmann::json;

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::sin_squared:
      return "sin_squared";
    case KernelKind::cos_plus_one:
      return "cos_plus_one";
    case KernelKind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

void validate_box(const RunConfig& cfg, const AtomSet& atoms, double kappa) {
  const double default_margin = [&] {
    double max_sigma = 0.0;
    for (const Atom& a : atoms) max_sigma = std::max(max_sigma, a.lj_sigma);
    return 2.0 * max_sigma + kappa;
  }();
  const double margin = cfg.margin >= 0.0 ? cfg.margin : default_margin;
  for (const Atom& a : atoms) {
    const double clearance =
        cfg.box_half_width -
        std::max({std::abs(a.pos.x), std::abs(a.pos.y), std::abs(a.pos.z)});
    if (clearance < margin) {
      std::ostringstream msg;
      msg << "atom '" << a.name << "' is " << clearance
          << " A from the nearest box wall, below the required margin "
          << margin << " A; enlarge the box or pass an explicit --margin";
      throw ConfigError(msg.str());
    }
  }
}

json params_json(const RunConfig& cfg, const Grid& grid,
                 const KernelStencil& stencil, std::size_t atom_count,
                 int threads) {
  json p;
  p["box_half_width"] = cfg.box_half_width;
  p["n"] = grid.n;
  p["h"] = grid.h;
  p["kernel"] = {{"kind", kernel_kind_name(cfg.kernel.kind)},
                 {"C", cfg.kernel.size_param_c},
                 {"kappa", stencil.kappa},
                 {"stencil_offsets", stencil.size()}};
  p["gamma0"] = cfg.phys.gamma0;
  p["rho_w"] = cfg.phys.rho_w;
  p["eps_m"] = cfg.phys.eps_m;
  p["eps_w"] = cfg.phys.eps_w;
  p["coulomb_k"] = cfg.phys.coulomb_k;
  p["init"] = cfg.init;
  p["outside_corrections"] = cfg.outside_corrections;
  p["outside_sampling"] = {{"theta", cfg.outside.n_theta},
                           {"phi", cfg.outside.n_phi},
                           {"radial", cfg.outside.n_radial}};
  p["seed"] = cfg.seed;
  p["threads"] = threads;
  p["atom_count"] = atom_count;
  return p;
}

json breakdown_json(const EnergyBreakdown& b, const SiteEnergies& site) {
  return json{{"surf", b.surf},
              {"vdw", b.vdw},
              {"elec", b.elec},
              {"total", b.total},
              {"outside_vdw", site.outside_vdw},
              {"outside_elec", site.outside_elec}};
}

struct PreparedRun {
  Grid grid;
  KernelStencil stencil;
  AtomSet atoms;
  SiteEnergies site;
  int threads = 1;
};

PreparedRun prepare(const RunConfig& cfg, bool need_atoms_for_init) {
  PreparedRun run;
  run.threads = resolve_threads(cfg.threads);
  if (cfg.n < 1) {
    throw ConfigError("grid resolution must be at least 1");
  }
  run.grid = Grid(cfg.box_half_width, cfg.n);
  run.atoms =
      cfg.atoms_path.empty() ? AtomSet{} : load_atoms(cfg.atoms_path);
  if (need_atoms_for_init && cfg.init == "tight" && run.atoms.empty()) {
    throw ConfigError("tight initial needs an atom file with atoms");
  }
  run.stencil = build_stencil(cfg.kernel, run.grid, cfg.phys.gamma0);
  validate_box(cfg, run.atoms, run.stencil.kappa);

  run.site = precompute_site_energies(run.grid, run.atoms, cfg.phys,
                                      run.threads);
  if (cfg.outside_corrections && !run.atoms.empty()) {
    const auto [ovdw, oelec] = outside_box_correction(
        run.atoms, cfg.phys, cfg.box_half_width, cfg.outside);
    run.site.outside_vdw = ovdw;
    run.site.outside_elec = oelec;
  }
  return run;
}

}  // namespace

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("VOXSOLV_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
    warn("ignoring invalid VOXSOLV_THREADS value '" + std::string(env) + "'");
  }
  return 1;
}

RunReport run_minimize_command(const RunConfig& cfg) {
  PreparedRun run = prepare(cfg, true);

  BinaryField initial;
  if (cfg.init == "tight") {
    initial = tight_initial(run.grid, run.atoms);
  } else if (cfg.init == "loose") {
    initial = loose_initial(run.grid);
  } else if (cfg.init == "mask") {
    initial = read_mask(cfg.mask_path);
    if (initial.grid.n != run.grid.n ||
        std::abs(initial.grid.half_width - run.grid.half_width) >
            1e-12 * run.grid.half_width) {
      throw ConfigError("mask grid does not match --box/--n");
    }
  } else {
    throw ConfigError("unknown initial '" + cfg.init +
                      "' (expected tight, loose, or mask)");
  }

  MinimizeOptions opts;
  opts.max_flips = cfg.max_flips;
  MinimizeResult result = minimize(std::move(initial), run.stencil, run.site,
                                   opts);

  const ComponentLabels comps =
      connected_components(result.field, BinaryField::kSolute);

  json report;
  report["params"] = params_json(cfg, run.grid, run.stencil,
                                 run.atoms.size(), run.threads);
  report["energy"] = breakdown_json(result.breakdown, run.site);
  report["result"] = {{"flips", result.breakdown.flips},
                      {"solute_cells", result.field.solute_count()},
                      {"solute_components", comps.count},
                      {"init_seconds", result.init_seconds},
                      {"flip_seconds", result.flip_seconds}};

  RunReport out;
  out.energy_json = report.dump(2) + "\n";
  if (!cfg.out_prefix.empty()) {
    std::ofstream ej(cfg.out_prefix + ".energy.json");
    if (!ej) {
      throw ConfigError("cannot write '" + cfg.out_prefix + ".energy.json'");
    }
    ej << out.energy_json;
    write_mask(cfg.out_prefix + ".mask.bin", result.field);
    write_obj(cfg.out_prefix + ".obj", extract_surface_mesh(result.field));
    write_trace_csv(cfg.out_prefix + ".trace.csv", result.trace,
                    cfg.trace_stride);
  }
  out.result = std::move(result);
  out.atoms = std::move(run.atoms);
  return out;
}

std::string run_energy_command(const RunConfig& cfg) {
  if (cfg.mask_path.empty()) {
    throw ConfigError("energy recomputation needs --mask");
  }
  BinaryField field = read_mask(cfg.mask_path);
  RunConfig derived = cfg;
  derived.n = field.grid.n;
  derived.box_half_width = field.grid.half_width;
  derived.init = "mask";
  PreparedRun run = prepare(derived, false);

  const EnergyBreakdown breakdown =
      total_energy(field, run.stencil, run.site);
  const ComponentLabels comps =
      connected_components(field, BinaryField::kSolute);

  json report;
  report["params"] = params_json(derived, run.grid, run.stencil,
                                 run.atoms.size(), run.threads);
  report["energy"] = breakdown_json(breakdown, run.site);
  report["result"] = {{"solute_cells", field.solute_count()},
                      {"solute_components", comps.count}};
  return report.dump(2) + "\n";
}

std::string run_oracle_command(const OracleConfig& cfg) {
  const double lo =
      cfg.bracket_lo > 0.0 ? cfg.bracket_lo : 0.5 * cfg.params.sigma;
  const double hi =
      cfg.bracket_hi > 0.0 ? cfg.bracket_hi : 4.0 * cfg.params.sigma;
  const OneAtomMinimum m = one_atom_minimize(cfg.params, lo, hi);
  json report;
  report["params"] = {{"charge", cfg.params.charge},
                      {"sigma", cfg.params.sigma},
                      {"epsilon", cfg.params.epsilon},
                      {"gamma0", cfg.params.phys.gamma0},
                      {"rho_w", cfg.params.phys.rho_w},
                      {"eps_m", cfg.params.phys.eps_m},
                      {"eps_w", cfg.params.phys.eps_w},
                      {"coulomb_k", cfg.params.phys.coulomb_k},
                      {"bracket", {lo, hi}}};
  report["minimum"] = {{"radius", m.radius},
                       {"surf", m.energy.surf},
                       {"vdw", m.energy.vdw},
                       {"elec", m.energy.elec},
                       {"total", m.energy.total}};
  return report.dump(2) + "\n";
}

std::string run_area_command(const AreaCommandConfig& cfg) {
  std::ofstream csv;
  std::ostream* csv_stream = nullptr;
  if (!cfg.csv_path.empty()) {
    csv.open(cfg.csv_path);
    if (!csv) {
      throw ConfigError("cannot write CSV '" + cfg.csv_path + "'");
    }
    csv_stream = &csv;
  }
  const auto rows = run_area_study(cfg.study, csv_stream);
  std::ostringstream summary;
  summary << "rows=" << rows.size();
  if (!rows.empty()) {
    summary << " final_n=" << rows.back().n
            << " mean_rel_err=" << rows.back().mean_rel_err
            << " slope=" << rows.back().slope_so_far;
  }
  summary << "\n";
  return summary.str();
}

}  // namespace voxsolv
