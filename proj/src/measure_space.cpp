#include "frg/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frg/error.hpp"
#include "frg/kernels.hpp"

namespace frg {

namespace {
// 2^(m j) cells must stay addressable and allocatable.
constexpr int kMaxTotalBits = 30;
}  // namespace

DyadicGrid::DyadicGrid(int dimension, int level) : dimension_(dimension), level_(level)
{
    if (dimension < 1) {
        throw Error(ErrorCode::InvalidArgument, "grid dimension must be >= 1");
    }
    if (level < 0) {
        throw Error(ErrorCode::InvalidArgument, "grid level must be >= 0");
    }
    if (dimension * level > kMaxTotalBits) {
        throw Error(ErrorCode::InvalidArgument,
                    "grid too large: dimension * level = " + std::to_string(dimension * level));
    }
    cell_count_ = std::size_t{1} << (dimension * level);
}

double DyadicGrid::cell_side() const noexcept { return std::ldexp(1.0, -level_); }

double DyadicGrid::cell_weight() const noexcept { return std::ldexp(1.0, -dimension_ * level_); }

std::vector<std::size_t> DyadicGrid::multi_index(std::size_t linear) const
{
    std::vector<std::size_t> k(static_cast<std::size_t>(dimension_));
    for (int axis = 0; axis < dimension_; ++axis) {
        k[static_cast<std::size_t>(axis)] = axis_index(linear, axis);
    }
    return k;
}

std::size_t DyadicGrid::axis_index(std::size_t linear, int axis) const noexcept
{
    const int shift = (dimension_ - 1 - axis) * level_;
    return (linear >> shift) & (cells_per_axis() - 1);
}

std::size_t DyadicGrid::linear_index(std::span<const std::size_t> k) const
{
    if (k.size() != static_cast<std::size_t>(dimension_)) {
        throw Error(ErrorCode::InvalidArgument, "multi-index has wrong dimension");
    }
    std::size_t linear = 0;
    for (std::size_t ki : k) {
        if (ki >= cells_per_axis()) {
            throw Error(ErrorCode::InvalidArgument, "multi-index out of range");
        }
        linear = (linear << level_) | ki;
    }
    return linear;
}

std::vector<double> DyadicGrid::lower_corner(std::size_t linear) const
{
    std::vector<double> x(static_cast<std::size_t>(dimension_));
    for (int axis = 0; axis < dimension_; ++axis) {
        x[static_cast<std::size_t>(axis)] =
            static_cast<double>(axis_index(linear, axis)) * cell_side();
    }
    return x;
}

std::vector<double> DyadicGrid::center(std::size_t linear) const
{
    std::vector<double> x(static_cast<std::size_t>(dimension_));
    for (int axis = 0; axis < dimension_; ++axis) {
        x[static_cast<std::size_t>(axis)] = center_coordinate(linear, axis);
    }
    return x;
}

double DyadicGrid::center_coordinate(std::size_t linear, int axis) const noexcept
{
    return (static_cast<double>(axis_index(linear, axis)) + 0.5) * cell_side();
}

std::vector<std::size_t> DyadicGrid::children(std::size_t linear) const
{
    const DyadicGrid fine(dimension_, level_ + 1);
    const auto k = multi_index(linear);
    const std::size_t count = std::size_t{1} << dimension_;
    std::vector<std::size_t> out;
    out.reserve(count);
    std::vector<std::size_t> kc(k.size());
    for (std::size_t bits = 0; bits < count; ++bits) {
        for (std::size_t axis = 0; axis < k.size(); ++axis) {
            const std::size_t bit = (bits >> (k.size() - 1 - axis)) & 1U;
            kc[axis] = 2 * k[axis] + bit;
        }
        out.push_back(fine.linear_index(kc));
    }
    return out;
}

std::size_t DyadicGrid::ancestor(std::size_t linear, int coarse_level) const
{
    if (coarse_level < 0 || coarse_level > level_) {
        throw Error(ErrorCode::InvalidArgument, "ancestor level out of range");
    }
    const int drop = level_ - coarse_level;
    std::size_t out = 0;
    for (int axis = 0; axis < dimension_; ++axis) {
        out = (out << coarse_level) | (axis_index(linear, axis) >> drop);
    }
    return out;
}

MeasureSpace::MeasureSpace(std::vector<double> weights, std::optional<DyadicGrid> grid)
    : weights_(std::move(weights)), grid_(std::move(grid))
{
    if (weights_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "a measure space needs at least two points");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::InvalidArgument, "measure weights must be finite and positive");
        }
    }
}

MeasureSpace MeasureSpace::counting(std::size_t n)
{
    return MeasureSpace(std::vector<double>(n, 1.0), std::nullopt);
}

MeasureSpace MeasureSpace::weighted(std::vector<double> weights)
{
    return MeasureSpace(std::move(weights), std::nullopt);
}

MeasureSpace MeasureSpace::dyadic(const DyadicGrid& grid)
{
    return MeasureSpace(std::vector<double>(grid.cell_count(), grid.cell_weight()), grid);
}

double MeasureSpace::total_measure() const
{
    const std::vector<double> ones(weights_.size(), 1.0);
    return kernels::parallel::weighted_sum(ones, weights_);
}

SignedFunction::SignedFunction(MeasureSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values))
{
    if (values_.size() != space_.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "function has " + std::to_string(values_.size()) + " values on a space of " +
                        std::to_string(space_.size()) + " points");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "function values must be finite");
        }
    }
}

SignedFunction SignedFunction::scaled(double factor) const
{
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [factor](double v) { return factor * v; });
    return SignedFunction(space_, std::move(out));
}

namespace {
double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }
}  // namespace

FiniteDensity::FiniteDensity(MeasureSpace space, std::vector<double> values, double tolerance)
    : function_(std::move(space), std::move(values)), min_value_(min_of(function_.values()))
{
    if (min_value_ < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "density values must be non-negative");
    }
    const double mass = integrate(function_);
    if (std::abs(mass - 1.0) > tolerance) {
        throw Error(ErrorCode::InvalidArgument,
                    "density integrates to " + std::to_string(mass) + ", expected 1");
    }
}

double integrate(const MeasureSpace& space, std::span<const double> values)
{
    if (values.size() != space.size()) {
        throw Error(ErrorCode::SpaceMismatch, "value count does not match the space");
    }
    return kernels::parallel::weighted_sum(values, space.weights());
}

double integrate(const SignedFunction& h) { return integrate(h.space(), h.values()); }

double integrate(const FiniteDensity& f) { return integrate(f.as_function()); }

}  // namespace frg
