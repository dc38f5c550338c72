#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace frg {

/**
 * Level-j dyadic partition of the unit cube [0,1)^m.
 *
 * Cells are the half-open boxes prod_i [k_i 2^-j, (k_i+1) 2^-j). Multi-indices
 * are linearized row-major with the last axis varying fastest:
 *   linear = ((k_1 * 2^j + k_2) * 2^j + ...) + k_m.
 * CSV exports depend on this ordering.
 */
class DyadicGrid {
public:
    DyadicGrid(int dimension, int level);

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] std::size_t cells_per_axis() const noexcept { return std::size_t{1} << level_; }
    [[nodiscard]] std::size_t cell_count() const noexcept { return cell_count_; }
    [[nodiscard]] double cell_side() const noexcept;
    [[nodiscard]] double cell_weight() const noexcept;

    [[nodiscard]] std::vector<std::size_t> multi_index(std::size_t linear) const;
    [[nodiscard]] std::size_t linear_index(std::span<const std::size_t> k) const;
    /// Index of cell `linear` along `axis`.
    [[nodiscard]] std::size_t axis_index(std::size_t linear, int axis) const noexcept;

    [[nodiscard]] std::vector<double> lower_corner(std::size_t linear) const;
    [[nodiscard]] std::vector<double> center(std::size_t linear) const;
    [[nodiscard]] double center_coordinate(std::size_t linear, int axis) const noexcept;

    /// The 2^m level-(j+1) cells whose union is this cell.
    [[nodiscard]] std::vector<std::size_t> children(std::size_t linear) const;
    /// Index of the level-`coarse_level` cell containing this cell.
    [[nodiscard]] std::size_t ancestor(std::size_t linear, int coarse_level) const;

    friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;

private:
    int dimension_;
    int level_;
    std::size_t cell_count_;
};

/// Finite measure space: N >= 2 atoms with strictly positive weights,
/// optionally carrying the dyadic grid it was built from.
class MeasureSpace {
public:
    /// Counting measure on n atoms (the simplex case).
    static MeasureSpace counting(std::size_t n);
    static MeasureSpace weighted(std::vector<double> weights);
    static MeasureSpace dyadic(const DyadicGrid& grid);

    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_.at(i); }
    [[nodiscard]] const std::optional<DyadicGrid>& grid() const noexcept { return grid_; }
    [[nodiscard]] double total_measure() const;

    friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

private:
    MeasureSpace(std::vector<double> weights, std::optional<DyadicGrid> grid);

    std::vector<double> weights_;
    std::optional<DyadicGrid> grid_;
};

/// Real-valued function on a finite measure space. No sign constraint.
class SignedFunction {
public:
    SignedFunction(MeasureSpace space, std::vector<double> values);

    [[nodiscard]] const MeasureSpace& space() const noexcept { return space_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] SignedFunction scaled(double factor) const;

private:
    MeasureSpace space_;
    std::vector<double> values_;
};

inline constexpr double kDensityTolerance = 1e-12;

/// Non-negative function integrating to one (within kDensityTolerance).
class FiniteDensity {
public:
    FiniteDensity(MeasureSpace space, std::vector<double> values,
                  double tolerance = kDensityTolerance);

    [[nodiscard]] const MeasureSpace& space() const noexcept { return function_.space(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return function_.values(); }
    [[nodiscard]] std::size_t size() const noexcept { return function_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return function_[i]; }
    [[nodiscard]] const SignedFunction& as_function() const noexcept { return function_; }

    /// Smallest value; the density is strictly positive with floor delta = min_value() when > 0.
    [[nodiscard]] double min_value() const noexcept { return min_value_; }
    [[nodiscard]] bool strictly_positive() const noexcept { return min_value_ > 0.0; }

private:
    SignedFunction function_;
    double min_value_;
};

/// Sum_i h(x_i) mu_i.
double integrate(const SignedFunction& h);
double integrate(const FiniteDensity& f);
double integrate(const MeasureSpace& space, std::span<const double> values);

}  // namespace frg
