#include "voxsolv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace voxsolv {

AtomSet parse_atoms(std::istream& in, const std::string& source_name) {
  AtomSet atoms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    Atom a;
    if (!(fields >> a.name)) continue;  // blank or comment-only
    const std::string where =
        source_name + ":" + std::to_string(line_no);
    if (!(fields >> a.pos.x >> a.pos.y >> a.pos.z >> a.charge >> a.lj_sigma >>
          a.lj_epsilon)) {
      throw ConfigError(where + ": expected 'NAME x y z charge sigma epsilon'");
    }
    std::string extra;
    if (fields >> extra) {
      throw ConfigError(where + ": trailing field '" + extra + "'");
    }
    if (!std::isfinite(a.pos.x) || !std::isfinite(a.pos.y) ||
        !std::isfinite(a.pos.z) || !std::isfinite(a.charge) ||
        !std::isfinite(a.lj_sigma) || !std::isfinite(a.lj_epsilon)) {
      throw ConfigError(where + ": non-finite value");
    }
    if (!(a.lj_sigma > 0.0)) {
      throw ConfigError(where + ": sigma must be positive");
    }
    if (a.lj_epsilon < 0.0) {
      throw ConfigError(where + ": epsilon must be non-negative");
    }
    for (const Atom& b : atoms) {
      if (b.pos.x == a.pos.x && b.pos.y == a.pos.y && b.pos.z == a.pos.z) {
        warn(where + ": atom '" + a.name + "' duplicates the position of '" +
             b.name + "'");
        break;
      }
    }
    atoms.push_back(std::move(a));
  }
  return atoms;
}

AtomSet load_atoms(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open atom file '" + path + "'");
  }
  return parse_atoms(in, path);
}

void write_mask(const std::string& path, const BinaryField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write mask file '" + path + "'");
  }
  char header[96];
  std::snprintf(header, sizeof(header), "%d %.17g %.17g\n", field.grid.n,
                field.grid.half_width, field.grid.h);
  out << header;
  std::vector<char> bytes(field.grid.cell_count());
  for (std::size_t c = 0; c < bytes.size(); ++c) {
    bytes[c] = field.phi[c] == BinaryField::kSolvent ? 1 : 0;
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw ConfigError("short write to mask file '" + path + "'");
  }
}

BinaryField read_mask(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open mask file '" + path + "'");
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw ConfigError("mask file '" + path + "' is missing its header");
  }
  std::istringstream fields(header);
  int n = 0;
  double a = 0.0, h = 0.0;
  if (!(fields >> n >> a >> h) || n < 1 || !(a > 0.0)) {
    throw ConfigError("mask file '" + path + "' has a malformed header");
  }
  const Grid grid(a, n);
  if (std::abs(grid.h - h) > 1e-12 * grid.h) {
    throw ConfigError("mask file '" + path +
                      "' header spacing disagrees with 2a/n");
  }
  BinaryField field(grid);
  std::vector<char> bytes(grid.cell_count());
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw ConfigError("mask file '" + path + "' is truncated");
  }
  for (std::size_t c = 0; c < bytes.size(); ++c) {
    if (bytes[c] == 0) {
      field.phi[c] = BinaryField::kSolute;
    } else if (bytes[c] == 1) {
      field.phi[c] = BinaryField::kSolvent;
    } else {
      throw ConfigError("mask file '" + path + "' has a byte outside {0, 1}");
    }
  }
  return field;
}

void write_obj(const std::string& path, const QuadMesh& mesh) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write mesh file '" + path + "'");
  }
  char buf[160];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.12g %.12g %.12g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& q : mesh.quads) {
    std::snprintf(buf, sizeof(buf), "f %d %d %d %d\n", q[0] + 1, q[1] + 1,
                  q[2] + 1, q[3] + 1);
    out << buf;
  }
  if (!out) {
    throw ConfigError("short write to mesh file '" + path + "'");
  }
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceEntry>& trace, std::size_t stride) {
  if (stride == 0) stride = 1;
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write trace file '" + path + "'");
  }
  out << "flip,cell,delta_g,energy\n";
  char buf[160];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i % stride != 0 && i + 1 != trace.size()) continue;
    const TraceEntry& t = trace[i];
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g\n", t.flip, t.cell,
                  t.delta_g, t.energy);
    out << buf;
  }
  if (!out) {
    throw ConfigError("short write to trace file '" + path + "'");
  }
}

}  // namespace voxsolv
