#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "voxsolv/common.hpp"
#include "voxsolv/kernel.hpp"

using namespace voxsolv;

namespace {
KernelSpec spec_of(oracle::Kern k, double c = 3.0, int dim = 3) {
    KernelSpec s;
    s.kind = k == oracle::Kern::sin2 ? KernelKind::sin_squared : KernelKind::cos_plus_one;
    s.size_param_c = c;
    s.dim = dim;
    return s;
}
}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("kernel values match the defining formulas") {
    KernelSpec s1 = spec_of(oracle::Kern::sin2);
    CHECK(kernel_value(s1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kernel_value(s1, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kernel_value(s1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kernel_value(s1, 1.0) == 0.0);
    CHECK(kernel_value(s1, 1.5) == 0.0);

    KernelSpec s2 = spec_of(oracle::Kern::cos1);
    CHECK(kernel_value(s2, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(kernel_value(s2, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kernel_value(s2, 1.0) == 0.0);

    CHECK_THROWS_AS(kernel_value(s1, -0.1), ConfigError);
    CHECK_THROWS_AS(kernel_value(s1, std::nan("")), ConfigError);

    for (double r : {0.05, 0.3, 0.77, 0.99}) {
        CHECK(kernel_value(s1, r) ==
              doctest::Approx(oracle::kern_value(oracle::Kern::sin2, r)).epsilon(1e-14));
        CHECK(kernel_value(s2, r) ==
              doctest::Approx(oracle::kern_value(oracle::Kern::cos1, r)).epsilon(1e-14));
    }
}

TEST_CASE("radial moment matches closed forms and an independent Simpson rule") {
    for (auto k : {oracle::Kern::sin2, oracle::Kern::cos1}) {
        double prod = radial_moment(spec_of(k));
        double closed = oracle::closed_moment(k);
        double simp = oracle::simpson(
            [&](double r) { return oracle::kern_value(k, r) * r * r * r; }, 0.0, 1.0, 8192);
        CHECK(prod == doctest::Approx(closed).epsilon(1e-12));
        CHECK(prod == doctest::Approx(simp).epsilon(1e-10));
    }
}

TEST_CASE("normalization constant: closed form, kappa scaling, and d = 2") {
    for (auto k : {oracle::Kern::sin2, oracle::Kern::cos1}) {
        KernelSpec s = spec_of(k);
        for (double kappa : {0.3, 0.5, 1.0, 2.0}) {
            CHECK(kernel_constant(s, kappa) ==
                  doctest::Approx(oracle::closed_constant(k, kappa)).epsilon(1e-8));
        }
        double c1 = kernel_constant(s, 1.0);
        CHECK(kernel_constant(s, 2.0) == doctest::Approx(c1 / 16.0).epsilon(1e-12));

        KernelSpec s2d = spec_of(k, 3.0, 2);
        CHECK(kernel_constant(s2d, 0.7) ==
              doctest::Approx(oracle::closed_constant(k, 0.7, 2)).epsilon(1e-8));
    }
    // frozen spot value: sin^2 constant at kappa = 1 is 1/(pi (1/8 - 3/(8 pi^2)))
    CHECK(kernel_constant(spec_of(oracle::Kern::sin2), 1.0) ==
          doctest::Approx(3.6585427284186671).epsilon(1e-12));
}

TEST_CASE("kappa_for follows C sqrt(h)") {
    KernelSpec s = spec_of(oracle::Kern::sin2, 2.5);
    CHECK(s.kappa_for(0.04) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.kappa_for(1.0) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("stencil with kappa barely above h keeps only face neighbors") {
    Grid g(1.0, 10);  // h = 0.2
    double c = 1.01 * std::sqrt(g.h);
    KernelStencil st = build_stencil(spec_of(oracle::Kern::sin2, c), g, 1.0);
    CHECK(st.size() == 7);  // center + 6 faces; diagonals are sqrt(2) h > 1.01 h
    CHECK(st.max_offset == 1);
    CHECK(st.offsets[st.center] == std::array<int, 3>{0, 0, 0});
}

TEST_CASE("stencil offset set matches a brute-force lattice enumeration") {
    Grid g(1.0, 20);  // h = 0.1
    KernelSpec s = spec_of(oracle::Kern::sin2, 1.0);
    KernelStencil st = build_stencil(s, g, 1.0);
    double kappa = s.kappa_for(g.h);
    int m = static_cast<int>(std::ceil(kappa / g.h)) + 1;
    std::size_t count = 0;
    for (int dz = -m; dz <= m; ++dz)
        for (int dy = -m; dy <= m; ++dy)
            for (int dx = -m; dx <= m; ++dx) {
                double d2 = double(dx) * dx + double(dy) * dy + double(dz) * dz;
                if (d2 <= st.radius_sq_cells) ++count;
            }
    CHECK(st.size() == count);
    CHECK(st.size() > 7);
}

TEST_CASE("stencil weights: formula, symmetry, totals, gamma scaling") {
    Grid g(1.0, 16);
    KernelSpec s = spec_of(oracle::Kern::cos1, 2.0);
    double kappa = s.kappa_for(g.h);
    KernelStencil st = build_stencil(s, g, 1.0);

    std::map<std::array<int, 3>, double> table;
    double total = 0.0, wmax = 0.0;
    double h6 = std::pow(g.h, 6);
    double constant = oracle::closed_constant(oracle::Kern::cos1, kappa);
    for (std::size_t i = 0; i < st.size(); ++i) {
        auto o = st.offsets[i];
        double d = g.h * std::sqrt(double(o[0]) * o[0] + double(o[1]) * o[1] + double(o[2]) * o[2]);
        double expect = constant * h6 * oracle::kern_value(oracle::Kern::cos1, d / kappa);
        CHECK(st.weights[i] == doctest::Approx(expect).epsilon(1e-8));
        CHECK(st.deltas[i] == o[0] + std::int64_t(o[1]) * g.n + std::int64_t(o[2]) * g.n * g.n);
        table[o] = st.weights[i];
        total += st.weights[i];
        wmax = std::max(wmax, st.weights[i]);
    }
    for (auto& [o, w] : table) {
        auto neg = std::array<int, 3>{-o[0], -o[1], -o[2]};
        REQUIRE(table.count(neg) == 1);
        CHECK(table[neg] == w);  // built from |o|, exactly symmetric
    }
    CHECK(st.weight_total == doctest::Approx(total).epsilon(1e-13));
    CHECK(st.weight_max == doctest::Approx(wmax).epsilon(1e-15));
    CHECK(st.center_weight == st.weights[st.center]);

    KernelStencil st2 = build_stencil(s, g, 2.0);
    for (std::size_t i = 0; i < st.size(); ++i) CHECK(st2.weights[i] == 2.0 * st.weights[i]);
}

TEST_CASE("stencil rejects kappa below h and oversized tables") {
    Grid g(1.0, 100);  // h = 0.02
    KernelSpec s = spec_of(oracle::Kern::sin2, 0.1);  // kappa = 0.0141 < h
    CHECK_THROWS_AS(build_stencil(s, g, 1.0), ConfigError);

    KernelSpec big = spec_of(oracle::Kern::sin2, 3.0);
    CHECK_THROWS_AS(build_stencil(big, g, 1.0, 1024), ConfigError);
    try {
        build_stencil(big, g, 1.0, 1024);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("MiB") != std::string::npos);
    }
}

TEST_CASE("tabulated kernel reproduces a sampled builtin") {
    KernelSpec t;
    t.kind = KernelKind::tabulated;
    t.size_param_c = 3.0;
    const int samples = 4000;
    for (int i = 0; i <= samples; ++i) {
        double r = double(i) / samples;
        t.table.emplace_back(r, oracle::kern_value(oracle::Kern::sin2, r));
    }
    for (double r : {0.1234, 0.5, 0.876}) {
        CHECK(kernel_value(t, r) ==
              doctest::Approx(oracle::kern_value(oracle::Kern::sin2, r)).epsilon(1e-6));
    }
    CHECK(radial_moment(t) == doctest::Approx(oracle::closed_moment(oracle::Kern::sin2))
                                  .epsilon(1e-6));
}

TEST_CASE("tabulated kernel validates its table") {
    KernelSpec t;
    t.kind = KernelKind::tabulated;
    t.table = {{0.0, 1.0}};  // too short
    CHECK_THROWS_AS(kernel_value(t, 0.5), ConfigError);
    t.table = {{0.0, 1.0}, {0.5, -1.0}, {1.0, 0.0}};  // negative value
    CHECK_THROWS_AS(kernel_value(t, 0.5), ConfigError);
    t.table = {{0.5, 1.0}, {0.2, 1.0}, {1.0, 0.0}};  // not increasing
    CHECK_THROWS_AS(kernel_value(t, 0.5), ConfigError);
    t.table = {{0.0, 0.0}, {1.0, 0.0}};  // zero moment
    CHECK_THROWS_AS(radial_moment(t), ConfigError);
}

}  // TEST_SUITE
