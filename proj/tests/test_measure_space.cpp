#include <doctest.h>

#include <random>
#include <sstream>

#include "frg/box_function.hpp"
#include "frg/catalog.hpp"
#include "frg/error.hpp"
#include "frg/measure_space.hpp"

using namespace frg;

TEST_CASE("dyadic grid sizes")
{
    const DyadicGrid g(2, 3);
    CHECK(g.cells_per_axis() == 8);
    CHECK(g.cell_count() == 64);
    CHECK(g.cell_side() == 0.125);
    CHECK(g.cell_weight() * static_cast<double>(g.cell_count()) == 1.0);
    CHECK_THROWS_AS(DyadicGrid(0, 1), Error);
    CHECK_THROWS_AS(DyadicGrid(1, -1), Error);
    CHECK_THROWS_AS(DyadicGrid(2, 16), Error);
}

TEST_CASE("row-major linearization with last axis fastest")
{
    const DyadicGrid g(2, 2);
    const std::size_t k[] = {1, 3};
    CHECK(g.linear_index(k) == 7);
    CHECK(g.multi_index(7) == std::vector<std::size_t>{1, 3});
    CHECK(g.center(7) == std::vector<double>{0.375, 0.875});
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        CHECK(g.linear_index(g.multi_index(c)) == c);
    }
}

TEST_CASE("every cell is the union of 2^m children")
{
    for (int m : {1, 2, 3}) {
        const DyadicGrid coarse(m, 2);
        const DyadicGrid fine(m, 3);
        std::vector<int> hits(fine.cell_count(), 0);
        for (std::size_t c = 0; c < coarse.cell_count(); ++c) {
            const auto kids = coarse.children(c);
            CHECK(kids.size() == (std::size_t{1} << m));
            for (std::size_t kid : kids) {
                ++hits[kid];
                CHECK(fine.ancestor(kid, 2) == c);
            }
        }
        for (int h : hits) {
            CHECK(h == 1);
        }
    }
}

TEST_CASE("measure space invariants")
{
    CHECK_THROWS_AS(MeasureSpace::counting(1), Error);
    CHECK_THROWS_AS(MeasureSpace::weighted({1.0, 0.0}), Error);
    CHECK_THROWS_AS(MeasureSpace::weighted({1.0, -2.0}), Error);
    CHECK(MeasureSpace::dyadic(DyadicGrid(1, 4)).total_measure() == 1.0);
}

TEST_CASE("integrate")
{
    const MeasureSpace s = MeasureSpace::dyadic(DyadicGrid(1, 3));
    CHECK(integrate(SignedFunction(s, std::vector<double>(8, 1.0))) == 1.0);
    std::vector<double> g01(8, 0.0);
    g01[0] = 2.0;
    g01[1] = -2.0;
    CHECK(integrate(SignedFunction(s, g01)) == 0.0);
    std::vector<double> spike(8, 0.0);
    spike[5] = 1.0 / s.weight(5);
    CHECK(integrate(SignedFunction(s, spike)) == 1.0);

    const MeasureSpace w = MeasureSpace::weighted({0.5, 2.0, 0.25});
    CHECK(integrate(SignedFunction(w, {0.0, 1.0 / 2.0, 0.0})) == 1.0);
}

TEST_CASE("integrate is linear")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> weights(37);
        for (double& x : weights) {
            x = 0.1 + std::abs(u(rng));
        }
        const MeasureSpace s = MeasureSpace::weighted(weights);
        std::vector<double> h1(37);
        std::vector<double> h2(37);
        std::vector<double> mix(37);
        const double a = u(rng);
        const double b = u(rng);
        for (std::size_t i = 0; i < 37; ++i) {
            h1[i] = u(rng);
            h2[i] = u(rng);
            mix[i] = a * h1[i] + b * h2[i];
        }
        const double lhs = integrate(SignedFunction(s, mix));
        const double rhs = a * integrate(SignedFunction(s, h1)) + b * integrate(SignedFunction(s, h2));
        CHECK(std::abs(lhs - rhs) <= 1e-14);
    }
}

TEST_CASE("finite density validation")
{
    const MeasureSpace s = MeasureSpace::counting(3);
    CHECK_NOTHROW(FiniteDensity(s, {0.25, 0.25, 0.5}));
    CHECK_THROWS_AS(FiniteDensity(s, {0.25, 0.25, 0.6}), Error);
    CHECK_THROWS_AS(FiniteDensity(s, {-0.25, 0.75, 0.5}), Error);
    const FiniteDensity f(s, {0.0, 0.5, 0.5});
    CHECK_FALSE(f.strictly_positive());
}

TEST_CASE("cell average projection of catalog functions")
{
    for (int j = 1; j <= 6; ++j) {
        const SignedFunction one = cell_average_projection(catalog::uniform1d(), DyadicGrid(1, j));
        for (double v : one.values()) {
            CHECK(v == 1.0);
        }
    }
    const SignedFunction l2 = cell_average_projection(catalog::g01_1d(), DyadicGrid(1, 2));
    for (double v : l2.values()) {
        CHECK(v == 0.0);
    }
    const SignedFunction l3 = cell_average_projection(catalog::g01_1d(), DyadicGrid(1, 3));
    CHECK(std::vector<double>(l3.values().begin(), l3.values().end()) ==
          std::vector<double>{2, -2, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("projection preserves integrals and refines consistently")
{
    for (const auto& name : catalog::names()) {
        const BoxFunction f = catalog::by_name(name);
        const double exact = f.integral();
        const int max_level = f.dimension() == 1 ? 10 : 6;
        for (int j = 2; j <= max_level; ++j) {
            const DyadicGrid fine(f.dimension(), j);
            const DyadicGrid coarse(f.dimension(), j - 1);
            const SignedFunction pf = cell_average_projection(f, fine);
            const SignedFunction pc = cell_average_projection(f, coarse);
            CHECK(std::abs(integrate(pf) - exact) <= 1e-14);
            for (std::size_t c = 0; c < coarse.cell_count(); ++c) {
                double avg = 0.0;
                const auto kids = coarse.children(c);
                for (std::size_t k : kids) {
                    avg += pf[k];
                }
                avg /= static_cast<double>(kids.size());
                CHECK(std::abs(avg - pc[c]) <= 1e-14);
            }
        }
    }
}

TEST_CASE("box function validation")
{
    CHECK_THROWS_AS(BoxFunction(1, {Box{1.0, {0.0}, {0.5}}}), Error);
    CHECK_THROWS_AS(BoxFunction(1, {Box{1.0, {0.0}, {0.6}}, Box{1.0, {0.5}, {1.0}}}), Error);
    CHECK_THROWS_AS(BoxFunction(1, {Box{1.0, {-0.1}, {1.0}}}), Error);
    try {
        BoxFunction(1, {Box{1.0, {0.0}, {0.6}}, Box{1.0, {0.4}, {0.8}}});
        FAIL("overlap accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidCatalogFunction);
    }
}

TEST_CASE("box function text format round-trips")
{
    std::stringstream text("# g01\n2 0 0.125\n-2 0.125 0.25\n\n0 0.25 1\n");
    const BoxFunction f = parse_box_function(text);
    CHECK(f.dimension() == 1);
    CHECK(f.boxes().size() == 3);
    std::stringstream out;
    write_box_function(out, catalog::g03_2d());
    const BoxFunction back = parse_box_function(out);
    CHECK(back.boxes().size() == catalog::g03_2d().boxes().size());
    const DyadicGrid g(2, 5);
    const auto a = cell_average_projection(back, g);
    const auto b = cell_average_projection(catalog::g03_2d(), g);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        CHECK(a[c] == b[c]);
    }
    std::stringstream bad("1 0 1 0\n");
    CHECK_THROWS_AS(parse_box_function(bad), Error);
    std::stringstream nan("x 0 1\n");
    CHECK_THROWS_AS(parse_box_function(nan), Error);
}

TEST_CASE("catalog hypotheses hold exactly")
{
    for (const auto& name : {"g01_1d", "g02_1d", "g01_2d", "g02_2d", "g03_2d"}) {
        const BoxFunction g = catalog::by_name(name);
        const BoxFunction f = g.dimension() == 1 ? catalog::uniform1d() : catalog::uniform2d();
        CHECK(g.integral() == 0.0);
        CHECK(combine(g, f, [](double a, double b) { return a * a / b; }).integral() == doctest::Approx(1.0).epsilon(1e-15));
    }
    const BoxFunction f = catalog::thirds_f0_1d();
    const BoxFunction g = catalog::thirds_g0_1d();
    CHECK(std::abs(f.integral() - 1.0) <= 1e-15);
    CHECK(std::abs(g.integral()) <= 1e-15);
    CHECK(std::abs(combine(g, f, [](double a, double b) { return a * a / b; }).integral() - 1.0) <= 1e-15);
    CHECK_THROWS_AS(catalog::by_name("nope"), Error);
}
