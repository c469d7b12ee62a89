#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "voxsolv/app.hpp"
#include "voxsolv/common.hpp"
#include "voxsolv/io.hpp"

using namespace voxsolv;

namespace {
std::string temp_path(const std::string& stem) {
    static int counter = 0;
    return std::string("io_test_") + std::to_string(++counter) + "_" + stem;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}
}  // namespace

TEST_SUITE("io") {

TEST_CASE("atom table parsing: happy path, comments, and line-numbered errors") {
    std::istringstream good(
        "# comment\n"
        "\n"
        "C1  0.5 -1.25 3.0  1.0 3.5 0.3\n"
        "  O2 0 0 0 -0.5 3.0 0.2  # trailing comment\n");
    AtomSet atoms = parse_atoms(good, "inline");
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].name == "C1");
    CHECK(atoms[0].pos.y == -1.25);
    CHECK(atoms[0].charge == 1.0);
    CHECK(atoms[1].lj_sigma == 3.0);
    CHECK(atoms[1].lj_epsilon == 0.2);

    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_atoms(in, "bad");
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("C 0 0 0 1 3.5\n", "bad:1");                   // missing field
    expect_error("\nC 0 0 0 1 3.5 0.3 extra\n", "bad:2");       // trailing field
    expect_error("C 0 0 nanana 1 3.5 0.3\n", "bad:1");          // junk number
    expect_error("C 0 0 0 1 -3.5 0.3\n", "sigma");              // bad sigma
    expect_error("C 0 0 0 1 3.5 -0.1\n", "eps");                // bad epsilon
}

TEST_CASE("mask round trip preserves every voxel and the grid header") {
    Grid g(2.5, 9);
    BinaryField f = oracle::random_field(g, 333);
    std::string path = temp_path("mask.bin");
    write_mask(path, f);
    BinaryField back = read_mask(path);
    CHECK(back.grid.n == g.n);
    CHECK(back.grid.half_width == g.half_width);
    CHECK(back.grid.h == g.h);
    CHECK(back.phi == f.phi);
    std::remove(path.c_str());
}

TEST_CASE("mask reader rejects malformed files") {
    auto write_raw = [](const std::string& path, const std::string& bytes) {
        std::ofstream out(path, std::ios::binary);
        out << bytes;
    };
    std::string path = temp_path("bad_mask.bin");
    write_raw(path, "not a header\n");
    CHECK_THROWS_AS(read_mask(path), ConfigError);
    write_raw(path, "2 1 0.8\n" + std::string(8, '\1'));  // h != 2a/n
    CHECK_THROWS_AS(read_mask(path), ConfigError);
    write_raw(path, "2 1 1\n\1\1\1");  // truncated payload
    CHECK_THROWS_AS(read_mask(path), ConfigError);
    write_raw(path, "2 1 1\n\1\1\1\1\1\1\1\2");  // byte outside {0,1}
    CHECK_THROWS_AS(read_mask(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_mask("definitely_missing_file.bin"), ConfigError);
}

TEST_CASE("OBJ export matches the mesh it was given") {
    Grid g(1.0, 3);
    BinaryField f(g);
    f.phi[g.linear_index(1, 1, 1)] = BinaryField::kSolute;
    QuadMesh mesh = extract_surface_mesh(f);
    std::string path = temp_path("cube.obj");
    write_obj(path, mesh);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::size_t v_lines = 0, f_lines = 0;
    std::string word;
    std::vector<std::array<int, 4>> quads;
    while (in >> word) {
        if (word == "v") {
            double x, y, z;
            in >> x >> y >> z;
            ++v_lines;
        } else if (word == "f") {
            std::array<int, 4> q{};
            in >> q[0] >> q[1] >> q[2] >> q[3];
            quads.push_back(q);
            ++f_lines;
        }
    }
    CHECK(v_lines == mesh.vertices.size());
    CHECK(f_lines == mesh.quads.size());
    for (std::size_t i = 0; i < quads.size(); ++i)
        for (int k = 0; k < 4; ++k) CHECK(quads[i][k] == mesh.quads[i][k] + 1);  // 1-indexed
    std::remove(path.c_str());
}

TEST_CASE("trace CSV thinning always keeps the endpoints") {
    std::vector<TraceEntry> trace;
    for (std::size_t k = 0; k < 10; ++k) trace.push_back({k, 100 + k, -1.0 * k, 50.0 - k});
    std::string path = temp_path("trace.csv");
    write_trace_csv(path, trace, 4);
    std::string text = slurp(path);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "flip,cell,delta_g,energy");
    std::vector<std::string> rows;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(line);
    REQUIRE(rows.size() == 4);  // flips 0, 4, 8 and the final 9
    CHECK(rows.front().substr(0, 2) == "0,");
    CHECK(rows.back().substr(0, 2) == "9,");
    std::remove(path.c_str());
}

TEST_CASE("minimize command writes consistent artifacts the energy command can replay") {
    std::string atoms_path = temp_path("ion.txt");
    {
        std::ofstream out(atoms_path);
        out << "ION 0.0 0.1 -0.05 1.0 2.2 0.25\n";
    }
    RunConfig cfg;
    cfg.atoms_path = atoms_path;
    cfg.box_half_width = 5.0;
    cfg.n = 24;
    cfg.kernel.size_param_c = 2.0;
    cfg.margin = 0.0;
    cfg.out_prefix = temp_path("run");
    RunReport report = run_minimize_command(cfg);

    auto energy_from = [](const std::string& text) {
        auto j = nlohmann::json::parse(text);
        return j.at("energy");
    };
    auto e1 = energy_from(report.energy_json);
    CHECK(e1.at("total").get<double>() == doctest::Approx(report.result.breakdown.total));

    // the stored mask replays to the same breakdown
    RunConfig replay = cfg;
    replay.init = "mask";
    replay.mask_path = cfg.out_prefix + ".mask.bin";
    replay.out_prefix.clear();
    auto e2 = energy_from(run_energy_command(replay));
    for (const char* key : {"surf", "vdw", "elec", "total", "outside_vdw", "outside_elec"}) {
        CAPTURE(key);
        CHECK(oracle::rel_close(e1.at(key).get<double>(), e2.at(key).get<double>(), 1e-12, 1e-9));
    }

    // sanity on the JSON parameter echo
    auto j = nlohmann::json::parse(report.energy_json);
    CHECK(j.at("params").at("n").get<int>() == 24);
    CHECK(j.at("params").at("atom_count").get<int>() == 1);
    CHECK(j.at("result").at("flips").get<std::int64_t>() ==
          std::int64_t(report.result.breakdown.flips));
    CHECK(j.at("result").at("solute_components").get<int>() >= 1);

    for (const char* suffix : {".energy.json", ".mask.bin", ".obj", ".trace.csv"}) {
        std::ifstream probe(cfg.out_prefix + suffix);
        CAPTURE(suffix);
        CHECK(probe.good());
        std::remove((cfg.out_prefix + suffix).c_str());
    }
    std::remove(atoms_path.c_str());
}

TEST_CASE("config validation: missing atoms, bad grid, atoms out of bounds") {
    RunConfig cfg;
    cfg.atoms_path = "no_such_atoms_file.txt";
    CHECK_THROWS_AS(run_minimize_command(cfg), ConfigError);

    std::string atoms_path = temp_path("edge.txt");
    {
        std::ofstream out(atoms_path);
        out << "EDGE 4.9 0 0 0.0 3.5 0.1\n";
    }
    RunConfig bad_n;
    bad_n.atoms_path = atoms_path;
    bad_n.n = 0;
    CHECK_THROWS_AS(run_minimize_command(bad_n), ConfigError);

    RunConfig tight_box;  // default margin 2 sigma + kappa cannot fit
    tight_box.atoms_path = atoms_path;
    tight_box.n = 16;
    try {
        run_minimize_command(tight_box);
        FAIL_CHECK("expected a margin violation");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("EDGE") != std::string::npos);
        CHECK(msg.find("margin") != std::string::npos);
    }
    std::remove(atoms_path.c_str());
}

TEST_CASE("thread resolution: flag beats environment beats default") {
    unsetenv("VOXSOLV_THREADS");
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) == 1);
    setenv("VOXSOLV_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    CHECK(resolve_threads(2) == 2);
    setenv("VOXSOLV_THREADS", "junk", 1);
    CHECK(resolve_threads(0) == 1);
    unsetenv("VOXSOLV_THREADS");
}

TEST_CASE("command line process exit codes") {
    const char* bin = std::getenv("VOXSOLV_BIN");
    if (!bin) return;  // only meaningful under ctest, which exports the path
    std::string base(bin);
    CHECK(std::system((base + " oracle > /dev/null").c_str()) == 0);
    CHECK(std::system((base + " --help > /dev/null").c_str()) == 0);
    int bad_flag = std::system((base + " minimize --no-such-flag > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad_flag) == 2);
    int bad_cfg = std::system(
        (base + " energy --mask definitely_missing.bin > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad_cfg) == 2);
    int no_sub = std::system((base + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(no_sub) == 2);
}

}  // TEST_SUITE
