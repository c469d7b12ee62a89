#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "voxsolv/grid.hpp"
#include "voxsolv/minimizer.hpp"
#include "voxsolv/site_energy.hpp"

namespace voxsolv {

// Atom list: one atom per line, "NAME x y z charge sigma epsilon",
// whitespace-delimited; blank lines and '#' comments skipped. Errors carry
// line numbers. Duplicate positions only warn.
AtomSet parse_atoms(std::istream& in, const std::string& source_name = "atoms");
AtomSet load_atoms(const std::string& path);

// Voxel mask: one ASCII header line "n a h" followed by n^3 raw bytes
// (0 = solute, 1 = solvent), x-fastest.
void write_mask(const std::string& path, const BinaryField& field);
BinaryField read_mask(const std::string& path);

void write_obj(const std::string& path, const QuadMesh& mesh);

// Energy trace: "flip,cell,delta_g,energy" rows; stride thins long traces
// but the first and last entries are always kept.
void write_trace_csv(const std::string& path,
                     const std::vector<TraceEntry>& trace,
                     std::size_t stride = 1);

}  // namespace voxsolv
