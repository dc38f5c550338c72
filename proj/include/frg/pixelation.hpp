#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frg/box_function.hpp"
#include "frg/geodesic.hpp"
#include "frg/measure_space.hpp"

namespace frg {

/// Continuous, compactly supported test function on [0,1)^m: a tent
/// max(0, 1 - |x - c| / r) per axis (product over axes), optionally squared.
struct TestFunction {
    enum class Shape { Tent, SquaredTent };

    std::vector<double> center;
    double radius = 0.0;
    Shape shape = Shape::Tent;

    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(center.size()); }
    [[nodiscard]] double operator()(std::span<const double> x) const;
    [[nodiscard]] double sup_norm() const noexcept { return 1.0; }
    [[nodiscard]] std::string label() const;
};

/// Fixed test set: 12 functions in 1D (3 centers x 2 radii x 2 shapes),
/// 9 tent products in 2D (3 x 3 centers, radius 1/4).
std::vector<TestFunction> test_function_catalog(int dimension);

struct LadderLevel {
    int j = 0;
    DyadicGrid grid;
    FiniteDensity f0;
    SignedFunction g0;
    /// Discrete Fisher energy of the projected velocity.
    double alpha = 0.0;
    bool degenerate = false;
    std::optional<SignedFunction> g_tilde;
    std::optional<GeodesicState> state;
};

struct PixelationLadder {
    BoxFunction f0;
    BoxFunction g0;
    double delta;
    /// Continuum flow parameters, box-wise.
    BoxFunction alpha;
    BoxFunction beta;
    std::vector<LadderLevel> levels;

    [[nodiscard]] const LadderLevel& level(int j) const;
    [[nodiscard]] int max_level() const;
    /// Continuum density f(., t) as a box function.
    [[nodiscard]] BoxFunction continuum_density(double t) const;
};

inline constexpr double kHypothesisTolerance = 1e-12;

/// Projects (f0, g0) to each level and builds the discrete geodesic there.
/// Levels whose projected velocity has no Fisher energy are kept as degenerate.
PixelationLadder build_ladder(const BoxFunction& f0, const BoxFunction& g0,
                              const std::vector<int>& levels, double delta);

std::vector<std::pair<int, double>> alpha_sequence(const PixelationLadder& ladder);

/// |sum_X_j f^j(y,t) phi(y) mu_j - integral f(y,t) phi(y) dy|, both sides on
/// the level-j_ref grid with phi sampled at cell centers.
double weak_error(const PixelationLadder& ladder, int j, double t, const TestFunction& phi,
                  int j_ref);

struct ThreeTermErrors {
    double e_f;
    std::optional<double> e_g;
    std::optional<double> e_q;
};

/// Weak discrepancies of f0^j, the normalized velocity and its Fisher energy density.
ThreeTermErrors three_term_errors(const PixelationLadder& ladder, int j, const TestFunction& phi,
                                  int j_ref);

}  // namespace frg
