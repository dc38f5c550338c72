#include "frg/pixelation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "frg/error.hpp"
#include "frg/kernels.hpp"

namespace frg {

double TestFunction::operator()(std::span<const double> x) const
{
    double v = 1.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        v *= std::max(0.0, 1.0 - std::abs(x[i] - center[i]) / radius);
    }
    return shape == Shape::SquaredTent ? v * v : v;
}

std::string TestFunction::label() const
{
    std::string out = shape == Shape::Tent ? "tent(c=" : "tent2(c=";
    char buf[32];
    for (std::size_t i = 0; i < center.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.4g", i == 0 ? "" : ",", center[i]);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, ";r=%.4g)", radius);
    return out + buf;
}

std::vector<TestFunction> test_function_catalog(int dimension)
{
    const double centers[] = {1.0 / 3.0, 0.5, 2.0 / 3.0};
    std::vector<TestFunction> out;
    if (dimension == 1) {
        for (double c : centers) {
            for (double r : {0.125, 0.25}) {
                for (auto shape : {TestFunction::Shape::Tent, TestFunction::Shape::SquaredTent}) {
                    out.push_back({{c}, r, shape});
                }
            }
        }
    } else if (dimension == 2) {
        for (double cx : centers) {
            for (double cy : centers) {
                out.push_back({{cx, cy}, 0.25, TestFunction::Shape::Tent});
            }
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "test functions exist for dimensions 1 and 2 only");
    }
    return out;
}

const LadderLevel& PixelationLadder::level(int j) const
{
    for (const LadderLevel& l : levels) {
        if (l.j == j) {
            return l;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "level " + std::to_string(j) + " is not in the ladder");
}

int PixelationLadder::max_level() const
{
    int out = 0;
    for (const LadderLevel& l : levels) {
        out = std::max(out, l.j);
    }
    return out;
}

BoxFunction PixelationLadder::continuum_density(double t) const
{
    return combine(alpha, beta, [t](double a, double b) { return evaluate_scalar(a, b, t).y; });
}

namespace {

Error hypothesis(const std::string& what) { return Error(ErrorCode::HypothesisViolation, what); }

}  // namespace

PixelationLadder build_ladder(const BoxFunction& f0, const BoxFunction& g0,
                              const std::vector<int>& levels, double delta)
{
    if (f0.dimension() != g0.dimension()) {
        throw Error(ErrorCode::SpaceMismatch, "f0 and g0 have different dimensions");
    }
    if (!(delta > 0.0)) {
        throw hypothesis("delta must be positive");
    }
    if (f0.min_value() < delta) {
        throw hypothesis("f0 >= delta fails: min f0 = " + std::to_string(f0.min_value()));
    }
    if (std::abs(f0.integral() - 1.0) > kHypothesisTolerance) {
        throw hypothesis("integral of f0 is " + std::to_string(f0.integral()) + ", expected 1");
    }
    if (std::abs(g0.integral()) > kHypothesisTolerance) {
        throw hypothesis("integral of g0 is " + std::to_string(g0.integral()) + ", expected 0");
    }
    const BoxFunction energy = combine(g0, f0, [](double g, double f) { return g * g / f; });
    if (std::abs(energy.integral() - 1.0) > kHypothesisTolerance) {
        throw hypothesis("integral of g0^2/f0 is " + std::to_string(energy.integral()) +
                         ", expected 1");
    }

    PixelationLadder ladder{
        f0,
        g0,
        delta,
        combine(f0, g0, [](double f, double g) { return solve_scalar_ivp(f, g).alpha; }),
        combine(f0, g0, [](double f, double g) { return solve_scalar_ivp(f, g).beta; }),
        {},
    };
    for (int j : levels) {
        const DyadicGrid grid(f0.dimension(), j);
        const SignedFunction fj = cell_average_projection(f0, grid);
        FiniteDensity density(fj.space(), std::vector<double>(fj.values().begin(), fj.values().end()));
        SignedFunction gj = cell_average_projection(g0, grid);
        const double alpha = fisher_energy(density, gj);
        LadderLevel level{j, grid, density, gj, alpha, !(alpha > kDegenerateEnergy), {}, {}};
        if (!level.degenerate) {
            const UnitVelocity unit = normalize_velocity(density, gj);
            level.g_tilde = unit.g();
            level.state = geodesic_flow(density, unit);
        }
        ladder.levels.push_back(std::move(level));
    }
    return ladder;
}

std::vector<std::pair<int, double>> alpha_sequence(const PixelationLadder& ladder)
{
    std::vector<std::pair<int, double>> out;
    out.reserve(ladder.levels.size());
    for (const LadderLevel& l : ladder.levels) {
        out.emplace_back(l.j, l.alpha);
    }
    return out;
}

namespace {

// |integral (coarse - continuum) phi| on the level-j_ref grid.
double discrepancy(const DyadicGrid& coarse, std::span<const double> coarse_values,
                   const BoxFunction& continuum, const TestFunction& phi, int j_ref)
{
    if (phi.dimension() != coarse.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "test function dimension does not match the grid");
    }
    const DyadicGrid fine(coarse.dimension(), j_ref);
    const SignedFunction reference = cell_average_projection(continuum, fine);
    const auto cells = static_cast<std::ptrdiff_t>(fine.cell_count());
    std::vector<double> diff(fine.cell_count());
    std::vector<double> weights(fine.cell_count());
#pragma omp parallel for schedule(static) if (cells > 4096)
    for (std::ptrdiff_t i = 0; i < cells; ++i) {
        const auto c = static_cast<std::size_t>(i);
        diff[c] = coarse_values[fine.ancestor(c, coarse.level())] - reference[c];
        weights[c] = phi(fine.center(c));
    }
    return std::abs(kernels::parallel::uniform_dot(diff, weights, fine.cell_weight()));
}

const LadderLevel& checked_level(const PixelationLadder& ladder, int j, int j_ref)
{
    if (j_ref <= ladder.max_level()) {
        throw Error(ErrorCode::InvalidArgument, "reference level must exceed every ladder level");
    }
    return ladder.level(j);
}

}  // namespace

double weak_error(const PixelationLadder& ladder, int j, double t, const TestFunction& phi,
                  int j_ref)
{
    const LadderLevel& level = checked_level(ladder, j, j_ref);
    if (level.degenerate) {
        throw Error(ErrorCode::DegenerateVelocity,
                    "level " + std::to_string(j) + " has no unit-speed velocity");
    }
    const FiniteDensity fj = density_at(*level.state, t);
    return discrepancy(level.grid, fj.values(), ladder.continuum_density(t), phi, j_ref);
}

ThreeTermErrors three_term_errors(const PixelationLadder& ladder, int j, const TestFunction& phi,
                                  int j_ref)
{
    const LadderLevel& level = checked_level(ladder, j, j_ref);
    ThreeTermErrors out{discrepancy(level.grid, level.f0.values(), ladder.f0, phi, j_ref), {}, {}};
    if (level.degenerate) {
        return out;
    }
    const SignedFunction& g = *level.g_tilde;
    std::vector<double> q(g.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = g[i] * g[i] / level.f0[i];
    }
    const BoxFunction q_continuum =
        combine(ladder.g0, ladder.f0, [](double gv, double fv) { return gv * gv / fv; });
    out.e_g = discrepancy(level.grid, g.values(), ladder.g0, phi, j_ref);
    out.e_q = discrepancy(level.grid, q, q_continuum, phi, j_ref);
    return out;
}

}  // namespace frg
