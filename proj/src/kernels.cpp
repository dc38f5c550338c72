#include "frg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frg/box_function.hpp"
#include "frg/error.hpp"

namespace frg::kernels {

namespace {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) noexcept
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    [[nodiscard]] double value() const noexcept { return sum + carry; }
};

void require_same_size(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw Error(ErrorCode::InvalidArgument, "kernel operands differ in length");
    }
}

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

// Range of cells along one axis that intersect [lo, hi).
std::pair<std::size_t, std::size_t> cell_range(double lo, double hi, double h, std::size_t n)
{
    auto first = static_cast<std::size_t>(std::max(0.0, std::floor(lo / h)));
    auto last = static_cast<std::size_t>(std::max(0.0, std::ceil(hi / h)));
    first = std::min(first, n);
    last = std::min(last, n);
    return {first, last};
}

double overlap_with_cell(const Box& box, const DyadicGrid& grid, std::size_t cell)
{
    const double h = grid.cell_side();
    double v = 1.0;
    for (int axis = 0; axis < grid.dimension(); ++axis) {
        const auto a = static_cast<std::size_t>(axis);
        const double lo = static_cast<double>(grid.axis_index(cell, axis)) * h;
        const double len = std::min(box.hi[a], lo + h) - std::max(box.lo[a], lo);
        if (len <= 0.0) {
            return 0.0;
        }
        v *= len;
    }
    return v;
}

void check_projection_args(const BoxFunction& f, const DyadicGrid& grid, std::span<double> out)
{
    if (f.dimension() != grid.dimension()) {
        throw Error(ErrorCode::SpaceMismatch, "box function and grid dimensions differ");
    }
    require_same_size(out.size(), grid.cell_count());
}

}  // namespace

namespace serial {

double weighted_sum(std::span<const double> values, std::span<const double> weights)
{
    require_same_size(values.size(), weights.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc.add(values[i] * weights[i]);
    }
    return acc.value();
}

double uniform_dot(std::span<const double> a, std::span<const double> b, double w)
{
    require_same_size(a.size(), b.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc.add(a[i] * b[i]);
    }
    return acc.value() * w;
}

void geodesic_flow(std::span<const double> alpha, std::span<const double> beta, double t,
                   std::span<double> density, std::span<double> kinetic)
{
    require_same_size(alpha.size(), beta.size());
    require_same_size(alpha.size(), density.size());
    require_same_size(alpha.size(), kinetic.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double phase = 0.5 * t - beta[i];
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        density[i] = alpha[i] * c * c;
        kinetic[i] = alpha[i] * s * s;
    }
}

void project(const BoxFunction& f, const DyadicGrid& grid, std::span<double> out)
{
    check_projection_args(f, grid, out);
    std::fill(out.begin(), out.end(), 0.0);
    const double h = grid.cell_side();
    const std::size_t n = grid.cells_per_axis();
    const auto m = static_cast<std::size_t>(grid.dimension());
    std::vector<std::pair<std::size_t, std::size_t>> ranges(m);
    std::vector<std::size_t> k(m);
    for (const Box& box : f.boxes()) {
        bool empty = false;
        for (std::size_t a = 0; a < m; ++a) {
            ranges[a] = cell_range(box.lo[a], box.hi[a], h, n);
            empty = empty || ranges[a].first >= ranges[a].second;
        }
        if (empty) {
            continue;
        }
        for (std::size_t a = 0; a < m; ++a) {
            k[a] = ranges[a].first;
        }
        // Odometer over the rectangle of touched cells.
        while (true) {
            const std::size_t cell = grid.linear_index(k);
            out[cell] += box.value * overlap_with_cell(box, grid, cell);
            std::size_t a = m;
            while (a > 0) {
                --a;
                if (++k[a] < ranges[a].second) {
                    break;
                }
                k[a] = ranges[a].first;
                if (a == 0) {
                    a = m + 1;
                    break;
                }
            }
            if (a == m + 1) {
                break;
            }
        }
    }
    const double weight = grid.cell_weight();
    for (double& v : out) {
        v /= weight;
    }
}

}  // namespace serial

namespace parallel {

double weighted_sum(std::span<const double> values, std::span<const double> weights)
{
    require_same_size(values.size(), weights.size());
    const std::size_t blocks = block_count(values.size());
    if (blocks <= 1) {
        return serial::weighted_sum(values, weights);
    }
    std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t len = std::min(kReductionBlock, values.size() - begin);
        partial[static_cast<std::size_t>(b)] =
            serial::weighted_sum(values.subspan(begin, len), weights.subspan(begin, len));
    }
    CompensatedSum acc;
    for (double p : partial) {
        acc.add(p);
    }
    return acc.value();
}

double uniform_dot(std::span<const double> a, std::span<const double> b, double w)
{
    require_same_size(a.size(), b.size());
    const std::size_t blocks = block_count(a.size());
    if (blocks <= 1) {
        return serial::uniform_dot(a, b, w);
    }
    std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(blocks); ++blk) {
        const std::size_t begin = static_cast<std::size_t>(blk) * kReductionBlock;
        const std::size_t len = std::min(kReductionBlock, a.size() - begin);
        partial[static_cast<std::size_t>(blk)] =
            serial::uniform_dot(a.subspan(begin, len), b.subspan(begin, len), 1.0);
    }
    CompensatedSum acc;
    for (double p : partial) {
        acc.add(p);
    }
    return acc.value() * w;
}

void geodesic_flow(std::span<const double> alpha, std::span<const double> beta, double t,
                   std::span<double> density, std::span<double> kinetic)
{
    require_same_size(alpha.size(), beta.size());
    require_same_size(alpha.size(), density.size());
    require_same_size(alpha.size(), kinetic.size());
    const auto n = static_cast<std::ptrdiff_t>(alpha.size());
#pragma omp parallel for schedule(static) if (n > 2048)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double phase = 0.5 * t - beta[u];
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        density[u] = alpha[u] * c * c;
        kinetic[u] = alpha[u] * s * s;
    }
}

void project(const BoxFunction& f, const DyadicGrid& grid, std::span<double> out)
{
    check_projection_args(f, grid, out);
    const auto& boxes = f.boxes();
    const double h = grid.cell_side();
    const std::size_t n = grid.cells_per_axis();
    const auto m = static_cast<std::size_t>(grid.dimension());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ranges(boxes.size());
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        for (std::size_t a = 0; a < m; ++a) {
            ranges[b].push_back(cell_range(boxes[b].lo[a], boxes[b].hi[a], h, n));
        }
    }
    const std::size_t row_size = grid.cell_count() / n;
    const double weight = grid.cell_weight();
    const auto rows = static_cast<std::ptrdiff_t>(n);
    // Each thread owns whole rows along the first axis and adds boxes in the
    // serial order, so every cell sees the same sequence of additions.
#pragma omp parallel for schedule(static) if (grid.cell_count() > 1024)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        const auto row = static_cast<std::size_t>(r);
        std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(row * row_size), row_size, 0.0);
        std::vector<std::size_t> k(m);
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            const auto& range = ranges[b];
            bool empty = row < range[0].first || row >= range[0].second;
            for (std::size_t a = 1; a < m; ++a) {
                empty = empty || range[a].first >= range[a].second;
            }
            if (empty) {
                continue;
            }
            k[0] = row;
            for (std::size_t a = 1; a < m; ++a) {
                k[a] = range[a].first;
            }
            // Odometer over the remaining axes.
            bool more = true;
            while (more) {
                const std::size_t cell = grid.linear_index(k);
                out[cell] += boxes[b].value * overlap_with_cell(boxes[b], grid, cell);
                more = false;
                for (std::size_t a = m; a-- > 1;) {
                    if (++k[a] < range[a].second) {
                        more = true;
                        break;
                    }
                    k[a] = range[a].first;
                }
            }
        }
        for (std::size_t i = row * row_size; i < (row + 1) * row_size; ++i) {
            out[i] /= weight;
        }
    }
}

}  // namespace parallel

}  // namespace frg::kernels
