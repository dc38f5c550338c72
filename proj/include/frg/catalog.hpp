#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frg/box_function.hpp"

namespace frg::catalog {

// Uniform densities.
BoxFunction uniform1d();
BoxFunction uniform2d();

// Velocities with f0 = 1 and g0^2 = 4 on [0,1/4] (1D) or g0^2 = 16 on [0,1/4]^2 (2D).
BoxFunction g01_1d();
BoxFunction g02_1d();
BoxFunction g01_2d();
BoxFunction g02_2d();
/// Checkerboard of +-4 on the sixteen 1/16-cells of [0,1/4]^2, + where k1+k2 is even.
BoxFunction g03_2d();

// Pair whose breakpoints 1/3 and 2/3 are not dyadic, so no pixelation level is exact.
BoxFunction thirds_f0_1d();
BoxFunction thirds_g0_1d();

/// Built-in function by name; throws InvalidCatalogFunction for unknown names.
BoxFunction by_name(std::string_view name);
std::vector<std::string> names();

/// Built-in name or, failing that, a box-function file path.
BoxFunction resolve(const std::string& name_or_path);

}  // namespace frg::catalog
