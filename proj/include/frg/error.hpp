#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frg {

enum class ErrorCode {
    InvalidArgument,
    InvalidCatalogFunction,
    InvalidAtom,
    NonpositiveInitialDensity,
    SpaceMismatch,
    NotUnitSpeed,
    DegenerateVelocity,
    NotCentered,
    ZeroDirection,
    BoundaryTouch,
    LeftDomain,
    HypothesisViolation,
    InsufficientPoints,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. Domain errors that happen at a
/// particular time or coordinate carry them as structured fields so the CLI
/// can serialize them.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::optional<double> time() const noexcept { return time_; }
    [[nodiscard]] std::optional<std::size_t> coordinate() const noexcept { return coordinate_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

    Error& at_time(double t) {
        time_ = t;
        return *this;
    }
    Error& at_coordinate(std::size_t k) {
        coordinate_ = k;
        return *this;
    }
    Error& for_field(std::string name) {
        field_ = std::move(name);
        return *this;
    }

private:
    ErrorCode code_;
    std::optional<double> time_;
    std::optional<std::size_t> coordinate_;
    std::string field_;
};

// The geodesic leaves the open simplex at a sampled time.
Error boundary_touch(std::size_t coordinate, double t);
// The ODE integration state left {theta_k > eps}.
Error left_domain(std::size_t coordinate, double t);

}  // namespace frg
