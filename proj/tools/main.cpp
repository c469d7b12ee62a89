#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "voxsolv/app.hpp"

namespace {

using voxsolv::AreaCommandConfig;
using voxsolv::KernelKind;
using voxsolv::OracleConfig;
using voxsolv::RunConfig;

KernelKind parse_kernel(const std::string& name) {
  if (name == "sin2" || name == "sin_squared") return KernelKind::sin_squared;
  if (name == "cos1" || name == "cos_plus_one") return KernelKind::cos_plus_one;
  throw voxsolv::ConfigError("unknown kernel '" + name +
                             "' (expected sin2 or cos1)");
}

void add_physics_flags(CLI::App* cmd, RunConfig* cfg) {
  cmd->add_option("--gamma0", cfg->phys.gamma0, "surface tension, kBT/A^2");
  cmd->add_option("--rho-w", cfg->phys.rho_w, "solvent density, 1/A^3");
  cmd->add_option("--eps-m", cfg->phys.eps_m, "solute relative permittivity");
  cmd->add_option("--eps-w", cfg->phys.eps_w, "solvent relative permittivity");
  cmd->add_option("--ke", cfg->phys.coulomb_k, "Coulomb constant, kBT*A/e^2");
  cmd->add_option("--outside-theta", cfg->outside.n_theta,
                  "exterior-integral polar samples");
  cmd->add_option("--outside-phi", cfg->outside.n_phi,
                  "exterior-integral azimuthal samples");
  cmd->add_option("--outside-radial", cfg->outside.n_radial,
                  "exterior-integral radial samples");
  cmd->add_flag("--no-outside", [cfg](std::int64_t) {
    cfg->outside_corrections = false;
  }, "skip the outside-box energy corrections");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "voxsolv: solvation free-energy estimates on binary voxel fields"};
  app.require_subcommand(1);

  RunConfig run;
  std::string kernel_name = "sin2";

  CLI::App* minimize =
      app.add_subcommand("minimize", "relax an interface by greedy flipping");
  minimize->add_option("--atoms", run.atoms_path, "atom list file");
  minimize->add_option("--box", run.box_half_width, "box half-width a, A");
  minimize->add_option("--n", run.n, "cells per side");
  minimize->add_option("--init", run.init, "tight | loose | mask");
  minimize->add_option("--mask", run.mask_path, "initial mask for --init mask");
  minimize->add_option("--kernel", kernel_name, "sin2 | cos1");
  minimize->add_option("--C", run.kernel.size_param_c,
                       "kernel size parameter; kappa = C sqrt(h)");
  minimize->add_option("--margin", run.margin,
                       "required atom-to-wall clearance, A");
  minimize->add_option("--seed", run.seed, "run seed (echoed in outputs)");
  minimize->add_option("--threads", run.threads,
                       "worker cap (0: VOXSOLV_THREADS or 1)");
  minimize->add_option("--max-flips", run.max_flips,
                       "flip cap (0: 10 n^3)");
  minimize->add_option("--trace-stride", run.trace_stride,
                       "keep every k-th trace row");
  minimize->add_option("--out", run.out_prefix,
                       "output prefix for .energy.json/.mask.bin/.obj/.trace.csv");
  add_physics_flags(minimize, &run);

  CLI::App* energy = app.add_subcommand(
      "energy", "recompute the energy breakdown of a stored mask");
  energy->add_option("--mask", run.mask_path, "mask file")->required();
  energy->add_option("--atoms", run.atoms_path, "atom list file");
  energy->add_option("--kernel", kernel_name, "sin2 | cos1");
  energy->add_option("--C", run.kernel.size_param_c, "kernel size parameter");
  energy->add_option("--margin", run.margin,
                     "required atom-to-wall clearance, A");
  energy->add_option("--threads", run.threads, "worker cap");
  add_physics_flags(energy, &run);

  OracleConfig oracle_cfg;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "closed-form one-atom minimum for validation");
  oracle->add_option("--Q", oracle_cfg.params.charge, "charge, e");
  oracle->add_option("--sigma", oracle_cfg.params.sigma, "LJ sigma, A");
  oracle->add_option("--epsilon", oracle_cfg.params.epsilon, "LJ epsilon, kBT");
  oracle->add_option("--gamma0", oracle_cfg.params.phys.gamma0, "kBT/A^2");
  oracle->add_option("--rho-w", oracle_cfg.params.phys.rho_w, "1/A^3");
  oracle->add_option("--eps-m", oracle_cfg.params.phys.eps_m, "");
  oracle->add_option("--eps-w", oracle_cfg.params.phys.eps_w, "");
  oracle->add_option("--ke", oracle_cfg.params.phys.coulomb_k, "kBT*A/e^2");
  oracle->add_option("--bracket-lo", oracle_cfg.bracket_lo, "A");
  oracle->add_option("--bracket-hi", oracle_cfg.bracket_hi, "A");

  AreaCommandConfig area_cfg;
  std::string area_kernel = "sin2";
  CLI::App* area = app.add_subcommand(
      "area-convergence", "sphere-area error versus grid resolution");
  area->add_option("--kernel", area_kernel, "sin2 | cos1");
  area->add_option("--C", area_cfg.study.kernel.size_param_c,
                   "kernel size parameter");
  area->add_option("--box", area_cfg.study.half_width, "box half-width, A");
  area->add_option("--radius", area_cfg.study.radius, "sphere radius, A");
  area->add_option("--n-min", area_cfg.study.n_min, "coarsest resolution");
  area->add_option("--n-max", area_cfg.study.n_max, "finest resolution");
  area->add_option("--n-step", area_cfg.study.n_step, "resolution step");
  area->add_option("--trials", area_cfg.study.trials, "perturbed centers per n");
  area->add_option("--seed", area_cfg.study.seed, "perturbation seed");
  area->add_flag("--direct", [&area_cfg](std::int64_t) {
    area_cfg.study.use_fft = false;
  }, "force the direct double sum");
  area->add_option("--out", area_cfg.csv_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (minimize->parsed()) {
      run.kernel.kind = parse_kernel(kernel_name);
      const voxsolv::RunReport report = voxsolv::run_minimize_command(run);
      std::fputs(report.energy_json.c_str(), stdout);
    } else if (energy->parsed()) {
      run.kernel.kind = parse_kernel(kernel_name);
      std::fputs(voxsolv::run_energy_command(run).c_str(), stdout);
    } else if (oracle->parsed()) {
      std::fputs(voxsolv::run_oracle_command(oracle_cfg).c_str(), stdout);
    } else if (area->parsed()) {
      area_cfg.study.kernel.kind = parse_kernel(area_kernel);
      std::fputs(voxsolv::run_area_command(area_cfg).c_str(), stdout);
    }
  } catch (const voxsolv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const voxsolv::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
