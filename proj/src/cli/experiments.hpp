#pragma once

#include <ostream>

#include "cli/config.hpp"

namespace frg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

/// Validates the whole configuration, then runs the experiment and writes its
/// files under config.out(). Diagnostics go to `err` as JSON.
int run(const ExperimentConfig& config, std::ostream& err);

}  // namespace frg::cli
