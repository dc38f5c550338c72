#include "frg/catalog.hpp"

#include <filesystem>
#include <functional>
#include <map>

#include "frg/error.hpp"

namespace frg::catalog {

namespace {

Box segment(double value, double lo, double hi) { return Box{value, {lo}, {hi}}; }

Box rect(double value, double x_lo, double x_hi, double y_lo, double y_hi)
{
    return Box{value, {x_lo, y_lo}, {x_hi, y_hi}};
}

// The zero region [0,1)^2 minus [0,1/4)^2.
void append_outer_zero(std::vector<Box>& boxes)
{
    boxes.push_back(rect(0.0, 0.25, 1.0, 0.0, 1.0));
    boxes.push_back(rect(0.0, 0.0, 0.25, 0.25, 1.0));
}

const std::map<std::string, std::function<BoxFunction()>, std::less<>>& registry()
{
    static const std::map<std::string, std::function<BoxFunction()>, std::less<>> table{
        {"uniform1d", uniform1d}, {"uniform2d", uniform2d},     {"g01_1d", g01_1d},
        {"g02_1d", g02_1d},       {"g01_2d", g01_2d},           {"g02_2d", g02_2d},
        {"g03_2d", g03_2d},       {"thirds_f0_1d", thirds_f0_1d}, {"thirds_g0_1d", thirds_g0_1d},
    };
    return table;
}

}  // namespace

BoxFunction uniform1d() { return BoxFunction::constant(1, 1.0); }

BoxFunction uniform2d() { return BoxFunction::constant(2, 1.0); }

BoxFunction g01_1d()
{
    return BoxFunction(1, {segment(2.0, 0.0, 0.125), segment(-2.0, 0.125, 0.25),
                           segment(0.0, 0.25, 1.0)});
}

BoxFunction g02_1d()
{
    return BoxFunction(1, {segment(2.0, 0.0, 0.0625), segment(-2.0, 0.0625, 0.125),
                           segment(2.0, 0.125, 0.1875), segment(-2.0, 0.1875, 0.25),
                           segment(0.0, 0.25, 1.0)});
}

BoxFunction g01_2d()
{
    std::vector<Box> boxes{rect(4.0, 0.0, 0.25, 0.0, 0.125), rect(-4.0, 0.0, 0.25, 0.125, 0.25)};
    append_outer_zero(boxes);
    return BoxFunction(2, std::move(boxes));
}

BoxFunction g02_2d()
{
    std::vector<Box> boxes{rect(4.0, 0.0, 0.125, 0.0, 0.125), rect(4.0, 0.125, 0.25, 0.125, 0.25),
                           rect(-4.0, 0.125, 0.25, 0.0, 0.125),
                           rect(-4.0, 0.0, 0.125, 0.125, 0.25)};
    append_outer_zero(boxes);
    return BoxFunction(2, std::move(boxes));
}

BoxFunction g03_2d()
{
    std::vector<Box> boxes;
    const double h = 0.0625;
    for (int k1 = 0; k1 < 4; ++k1) {
        for (int k2 = 0; k2 < 4; ++k2) {
            const double value = (k1 + k2) % 2 == 0 ? 4.0 : -4.0;
            boxes.push_back(rect(value, k1 * h, (k1 + 1) * h, k2 * h, (k2 + 1) * h));
        }
    }
    append_outer_zero(boxes);
    return BoxFunction(2, std::move(boxes));
}

BoxFunction thirds_f0_1d()
{
    return BoxFunction(1, {segment(0.5, 0.0, 1.0 / 3.0), segment(1.0, 1.0 / 3.0, 2.0 / 3.0),
                           segment(1.5, 2.0 / 3.0, 1.0)});
}

BoxFunction thirds_g0_1d()
{
    return BoxFunction(1, {segment(0.5, 0.0, 1.0 / 3.0), segment(-1.4, 1.0 / 3.0, 2.0 / 3.0),
                           segment(0.9, 2.0 / 3.0, 1.0)});
}

BoxFunction by_name(std::string_view name)
{
    const auto& table = registry();
    const auto it = table.find(name);
    if (it == table.end()) {
        throw Error(ErrorCode::InvalidCatalogFunction,
                    "unknown catalog function '" + std::string(name) + "'");
    }
    return it->second();
}

std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) {
        out.push_back(name);
    }
    return out;
}

BoxFunction resolve(const std::string& name_or_path)
{
    if (registry().contains(name_or_path)) {
        return by_name(name_or_path);
    }
    if (std::filesystem::exists(name_or_path)) {
        return load_box_function(name_or_path);
    }
    throw Error(ErrorCode::InvalidCatalogFunction,
                "'" + name_or_path + "' is neither a catalog name nor a readable file");
}

}  // namespace frg::catalog
