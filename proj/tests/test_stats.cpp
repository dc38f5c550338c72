#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frg/box_function.hpp"
#include "frg/catalog.hpp"
#include "frg/error.hpp"
#include "frg/geodesic.hpp"
#include "frg/stats.hpp"
#include "oracles.hpp"

using namespace frg;
using std::numbers::pi;

namespace {

GeodesicState grid_state(const BoxFunction& f0, const BoxFunction& g0, const DyadicGrid& grid)
{
    const SignedFunction f = cell_average_projection(f0, grid);
    const FiniteDensity density(f.space(), std::vector<double>(f.values().begin(), f.values().end()));
    return geodesic_flow(density, normalize_velocity(density, cell_average_projection(g0, grid)));
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> t;
    for (int i = 0; i < n; ++i) {
        t.push_back(a + (b - a) * i / (n - 1));
    }
    return t;
}

std::vector<double> axis(const MomentCurve& m, int d)
{
    std::vector<double> out;
    for (const auto& row : m.mean) {
        out.push_back(row[static_cast<std::size_t>(d)]);
    }
    return out;
}

std::vector<Eigen::Vector2d> trajectory_points(double tau, double t_end)
{
    const SimplexPoint p0(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
    std::vector<Eigen::Vector2d> pts;
    for (const auto& q : simplex_trajectory(p0, TangentVector(ellipse_param_n2(tau)), linspace(0, t_end, 60))) {
        pts.emplace_back(q[0], q[1]);
    }
    return pts;
}

}  // namespace

TEST_CASE("moments of the aligned one-dimensional run")
{
    const auto state = grid_state(catalog::uniform1d(), catalog::g01_1d(), DyadicGrid(1, 6));
    const auto times = linspace(0, pi, 101);
    const MomentCurve m = moments(state, times);
    REQUIRE(m.times.size() == 101);
    CHECK(std::abs(m.mean.front()[0] - 0.5) <= 1e-14);
    CHECK(std::abs(m.mean.back()[0] - 0.125) <= 1e-14);
    const TrigCoefficients fit = fit_trig_curve(times, axis(m, 0));
    CHECK(std::abs(fit.a - 0.5) <= 1e-10);
    CHECK(std::abs(fit.b - 0.125) <= 1e-10);
    CHECK(std::abs(fit.c + 1.0 / 32.0) <= 1e-10);
    for (const auto& row : m.variance) {
        CHECK(row[0] >= 0.0);
    }
}

TEST_CASE("mean curve coefficients for random grid states")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const DyadicGrid grid(1 + trial % 2, 3 + trial % 3);
        const GeodesicState s = oracle::random_state(rng, MeasureSpace::dyadic(grid));
        const auto times = linspace(0, pi, 41);
        const MomentCurve m = moments(s, times);
        for (int d = 0; d < grid.dimension(); ++d) {
            double a = 0.0;
            double b = 0.0;
            double c = 0.0;
            for (std::size_t i = 0; i < grid.cell_count(); ++i) {
                const double x = grid.center_coordinate(i, d);
                const double w = grid.cell_weight();
                a += x * s.f0()[i] * w;
                b += x * s.g0()[i] * s.g0()[i] / s.f0()[i] * w;
                c += x * s.g0()[i] * w;
            }
            const TrigCoefficients fit = fit_trig_curve(times, axis(m, d));
            CHECK(std::abs(fit.a - a) <= 1e-10);
            CHECK(std::abs(fit.b - b) <= 1e-10);
            CHECK(std::abs(fit.c - c) <= 1e-10);
        }
    }
}

TEST_CASE("g02 and g03 give the same two-dimensional moment curves")
{
    const auto times = linspace(0, pi, 61);
    for (int level = 4; level <= 6; ++level) {
        const DyadicGrid grid(2, level);
        const MomentCurve a = moments(grid_state(catalog::uniform2d(), catalog::g02_2d(), grid), times);
        const MomentCurve b = moments(grid_state(catalog::uniform2d(), catalog::g03_2d(), grid), times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            for (std::size_t d = 0; d < 2; ++d) {
                CHECK(std::abs(a.mean[i][d] - b.mean[i][d]) <= 1e-12);
                CHECK(std::abs(a.variance[i][d] - b.variance[i][d]) <= 1e-12);
                CHECK(a.variance[i][d] >= 0.0);
            }
        }
    }
}

TEST_CASE("generic trajectories from the centroid are ellipses")
{
    for (double tau : {0.3, 1.0, 2.0, 3.5, 4.2, 5.0, 6.0}) {
        CAPTURE(tau);
        const ConicFit fit = classify_conic(trajectory_points(tau, 1.2));
        CHECK(fit.kind == ConicKind::Ellipse);
        CHECK(fit.residual <= 1e-8);
        CHECK(fit.discriminant < -kDiscriminantCutoff);
    }
}

TEST_CASE("conic classification on synthetic point sets")
{
    std::vector<Eigen::Vector2d> circle;
    for (int i = 0; i < 6; ++i) {
        circle.emplace_back(std::cos(pi * i / 3), std::sin(pi * i / 3));
    }
    CHECK(classify_conic(circle).kind == ConicKind::Ellipse);

    std::vector<Eigen::Vector2d> five(circle.begin(), circle.begin() + 5);
    try {
        (void)classify_conic(five);
        FAIL("five points accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientPoints);
    }

    std::vector<Eigen::Vector2d> parabola;
    std::vector<Eigen::Vector2d> hyperbola;
    std::vector<Eigen::Vector2d> line;
    for (int i = 0; i < 30; ++i) {
        const double x = -1.0 + 2.0 * i / 29.0;
        parabola.emplace_back(x, x * x);
        hyperbola.emplace_back(1.5 + x, 1.0 / (1.5 + x));
        line.emplace_back(x, 0.25 - 2.0 * x);
    }
    CHECK(classify_conic(parabola).kind == ConicKind::Degenerate);
    CHECK(classify_conic(hyperbola).kind == ConicKind::Degenerate);
    const ConicFit straight = classify_conic(line);
    CHECK(straight.kind == ConicKind::Line);
    CHECK(straight.residual <= 1e-15);
    CHECK(to_string(ConicKind::Ellipse) == "Ellipse");
}

TEST_CASE("classification is invariant under rigid motions")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (double tau : {1.0, 2.0, pi / 2}) {
        const auto pts = trajectory_points(tau, 1.2);
        const ConicKind kind = classify_conic(pts).kind;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::Rotation2Dd r(angle(rng));
            const Eigen::Vector2d b(shift(rng), shift(rng));
            std::vector<Eigen::Vector2d> moved;
            for (const auto& p : pts) {
                moved.push_back(r * p + b);
            }
            const ConicFit fit = classify_conic(moved);
            CHECK(fit.kind == kind);
            CHECK(fit.residual <= 1e-8);
        }
    }
}

TEST_CASE("trig fit recovers exact coefficients")
{
    const auto times = linspace(0, 2 * pi, 25);
    std::vector<double> y;
    for (double t : times) {
        y.push_back(0.7 * std::pow(std::cos(t / 2), 2) - 0.2 * std::pow(std::sin(t / 2), 2) + 1.3 * std::sin(t));
    }
    const TrigCoefficients fit = fit_trig_curve(times, y);
    CHECK(fit.a == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(fit.b == doctest::Approx(-0.2).epsilon(1e-13));
    CHECK(fit.c == doctest::Approx(1.3).epsilon(1e-13));
}
