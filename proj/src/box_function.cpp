#include "frg/box_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "frg/error.hpp"
#include "frg/kernels.hpp"

namespace frg {

namespace {

constexpr double kCoverTolerance = 1e-12;

Error catalog_error(const std::string& what)
{
    return Error(ErrorCode::InvalidCatalogFunction, what);
}

}  // namespace

double Box::volume() const
{
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        v *= hi[i] - lo[i];
    }
    return v;
}

bool Box::contains(std::span<const double> x) const
{
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (x[i] < lo[i] || x[i] >= hi[i]) {
            return false;
        }
    }
    return true;
}

double intersection_volume(const Box& a, const Box& b)
{
    double v = 1.0;
    for (std::size_t i = 0; i < a.lo.size(); ++i) {
        const double len = std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]);
        if (len <= 0.0) {
            return 0.0;
        }
        v *= len;
    }
    return v;
}

BoxFunction::BoxFunction(int dimension, std::vector<Box> boxes, Unchecked)
    : dimension_(dimension), boxes_(std::move(boxes))
{
}

BoxFunction::BoxFunction(int dimension, std::vector<Box> boxes)
    : dimension_(dimension), boxes_(std::move(boxes))
{
    if (dimension_ < 1) {
        throw catalog_error("dimension must be >= 1");
    }
    if (boxes_.empty()) {
        throw catalog_error("no boxes");
    }
    const auto m = static_cast<std::size_t>(dimension_);
    double covered = 0.0;
    for (std::size_t b = 0; b < boxes_.size(); ++b) {
        const Box& box = boxes_[b];
        if (box.lo.size() != m || box.hi.size() != m) {
            throw catalog_error("box " + std::to_string(b) + " has the wrong dimension");
        }
        if (!std::isfinite(box.value)) {
            throw catalog_error("box " + std::to_string(b) + " has a non-finite value");
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!(box.lo[i] >= 0.0 && box.hi[i] <= 1.0 && box.lo[i] < box.hi[i])) {
                throw catalog_error("box " + std::to_string(b) +
                                    " is empty or leaves the unit cube");
            }
        }
        covered += box.volume();
    }
    for (std::size_t a = 0; a < boxes_.size(); ++a) {
        for (std::size_t b = a + 1; b < boxes_.size(); ++b) {
            if (intersection_volume(boxes_[a], boxes_[b]) > 0.0) {
                throw catalog_error("boxes " + std::to_string(a) + " and " + std::to_string(b) +
                                    " overlap");
            }
        }
    }
    // Disjoint boxes inside the cube with total volume 1 cover it up to a null set.
    if (std::abs(covered - 1.0) > kCoverTolerance) {
        throw catalog_error("boxes cover volume " + std::to_string(covered) + ", expected 1");
    }
}

BoxFunction BoxFunction::constant(int dimension, double value)
{
    const auto m = static_cast<std::size_t>(dimension);
    return BoxFunction(dimension, {Box{value, std::vector<double>(m, 0.0), std::vector<double>(m, 1.0)}});
}

BoxFunction BoxFunction::from_cells(const DyadicGrid& grid, std::span<const double> values)
{
    if (values.size() != grid.cell_count()) {
        throw catalog_error("cell value count does not match the grid");
    }
    std::vector<Box> boxes;
    boxes.reserve(values.size());
    const double h = grid.cell_side();
    for (std::size_t c = 0; c < values.size(); ++c) {
        Box box{values[c], grid.lower_corner(c), {}};
        box.hi = box.lo;
        for (double& x : box.hi) {
            x += h;
        }
        boxes.push_back(std::move(box));
    }
    return BoxFunction(grid.dimension(), std::move(boxes), Unchecked{});
}

double BoxFunction::integral() const
{
    std::vector<double> values;
    std::vector<double> volumes;
    values.reserve(boxes_.size());
    volumes.reserve(boxes_.size());
    for (const Box& b : boxes_) {
        values.push_back(b.value);
        volumes.push_back(b.volume());
    }
    return kernels::serial::weighted_sum(values, volumes);
}

double BoxFunction::value_at(std::span<const double> x) const
{
    for (const Box& b : boxes_) {
        if (b.contains(x)) {
            return b.value;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "point outside [0,1)^m");
}

double BoxFunction::min_value() const
{
    return std::min_element(boxes_.begin(), boxes_.end(),
                            [](const Box& a, const Box& b) { return a.value < b.value; })
        ->value;
}

double BoxFunction::max_value() const
{
    return std::max_element(boxes_.begin(), boxes_.end(),
                            [](const Box& a, const Box& b) { return a.value < b.value; })
        ->value;
}

BoxFunction BoxFunction::map(const std::function<double(double)>& op) const
{
    std::vector<Box> out = boxes_;
    for (Box& b : out) {
        b.value = op(b.value);
    }
    return BoxFunction(dimension_, std::move(out), Unchecked{});
}

BoxFunction combine(const BoxFunction& a, const BoxFunction& b,
                    const std::function<double(double, double)>& op)
{
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "cannot combine box functions of different dimension");
    }
    const auto m = static_cast<std::size_t>(a.dimension());
    std::vector<Box> out;
    for (const Box& ba : a.boxes()) {
        for (const Box& bb : b.boxes()) {
            if (intersection_volume(ba, bb) <= 0.0) {
                continue;
            }
            Box box{op(ba.value, bb.value), std::vector<double>(m), std::vector<double>(m)};
            for (std::size_t i = 0; i < m; ++i) {
                box.lo[i] = std::max(ba.lo[i], bb.lo[i]);
                box.hi[i] = std::min(ba.hi[i], bb.hi[i]);
            }
            out.push_back(std::move(box));
        }
    }
    return BoxFunction(a.dimension(), std::move(out), BoxFunction::Unchecked{});
}

SignedFunction cell_average_projection(const BoxFunction& f, const DyadicGrid& grid)
{
    if (f.dimension() != grid.dimension()) {
        throw Error(ErrorCode::SpaceMismatch, "box function and grid dimensions differ");
    }
    std::vector<double> out(grid.cell_count());
    kernels::parallel::project(f, grid, out);
    return SignedFunction(MeasureSpace::dyadic(grid), std::move(out));
}

BoxFunction parse_box_function(std::istream& in)
{
    std::vector<Box> boxes;
    int dimension = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::vector<double> numbers;
        std::string token;
        while (fields >> token) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) {
                throw catalog_error("line " + std::to_string(line_no) + ": '" + token +
                                    "' is not a number");
            }
            numbers.push_back(v);
        }
        if (numbers.size() < 3 || numbers.size() % 2 == 0) {
            throw catalog_error("line " + std::to_string(line_no) +
                                ": expected `value x_lo x_hi [y_lo y_hi ...]`");
        }
        const int dim = static_cast<int>((numbers.size() - 1) / 2);
        if (dimension == 0) {
            dimension = dim;
        } else if (dim != dimension) {
            throw catalog_error("line " + std::to_string(line_no) + ": inconsistent box dimension");
        }
        Box box{numbers[0], {}, {}};
        for (int i = 0; i < dim; ++i) {
            box.lo.push_back(numbers[1 + 2 * static_cast<std::size_t>(i)]);
            box.hi.push_back(numbers[2 + 2 * static_cast<std::size_t>(i)]);
        }
        boxes.push_back(std::move(box));
    }
    if (boxes.empty()) {
        throw catalog_error("no boxes found");
    }
    return BoxFunction(dimension, std::move(boxes));
}

BoxFunction load_box_function(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw catalog_error("cannot open " + path.string());
    }
    return parse_box_function(in);
}

void write_box_function(std::ostream& out, const BoxFunction& f)
{
    char buf[32];
    for (const Box& b : f.boxes()) {
        std::snprintf(buf, sizeof buf, "%.17g", b.value);
        out << buf;
        for (std::size_t i = 0; i < b.lo.size(); ++i) {
            std::snprintf(buf, sizeof buf, " %.17g", b.lo[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, " %.17g", b.hi[i]);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace frg
