#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "frg/measure_space.hpp"

namespace frg {

/// Half-open axis-aligned box prod_i [lo_i, hi_i) carrying a constant value.
struct Box {
    double value = 0.0;
    std::vector<double> lo;
    std::vector<double> hi;

    [[nodiscard]] double volume() const;
    [[nodiscard]] bool contains(std::span<const double> x) const;
};

/// Volume of the intersection of two boxes of the same dimension.
double intersection_volume(const Box& a, const Box& b);

/// Continuum piecewise-constant function on [0,1)^m given by a finite set of
/// disjoint boxes that cover the unit cube.
class BoxFunction {
public:
    /// Validates that the boxes lie in [0,1]^m, do not overlap and cover the cube.
    BoxFunction(int dimension, std::vector<Box> boxes);

    static BoxFunction constant(int dimension, double value);
    /// One box per cell of a dyadic grid; values in the grid's linear order.
    static BoxFunction from_cells(const DyadicGrid& grid, std::span<const double> values);

    [[nodiscard]] int dimension() const noexcept { return dimension_; }
    [[nodiscard]] const std::vector<Box>& boxes() const noexcept { return boxes_; }

    /// Exact integral over [0,1)^m.
    [[nodiscard]] double integral() const;
    [[nodiscard]] double value_at(std::span<const double> x) const;
    [[nodiscard]] double min_value() const;
    [[nodiscard]] double max_value() const;

    /// Pointwise map of the values.
    [[nodiscard]] BoxFunction map(const std::function<double(double)>& op) const;

private:
    struct Unchecked {};
    BoxFunction(int dimension, std::vector<Box> boxes, Unchecked);

    friend BoxFunction combine(const BoxFunction&, const BoxFunction&,
                               const std::function<double(double, double)>&);

    int dimension_;
    std::vector<Box> boxes_;
};

/// Common refinement of two box functions with values op(a(x), b(x)).
BoxFunction combine(const BoxFunction& a, const BoxFunction& b,
                    const std::function<double(double, double)>& op);

/// Cell averages (1/|Q_k|) * integral over Q_k of f, computed by exact
/// box/cell intersection volumes.
SignedFunction cell_average_projection(const BoxFunction& f, const DyadicGrid& grid);

/// Text format, one box per line: `value x_lo x_hi [y_lo y_hi ...]`.
/// Blank lines and lines starting with '#' are ignored.
BoxFunction parse_box_function(std::istream& in);
BoxFunction load_box_function(const std::filesystem::path& path);
void write_box_function(std::ostream& out, const BoxFunction& f);

}  // namespace frg
