#include "frg/error.hpp"

#include <cstdio>

namespace frg {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCatalogFunction: return "InvalidCatalogFunction";
    case ErrorCode::InvalidAtom: return "InvalidAtom";
    case ErrorCode::NonpositiveInitialDensity: return "NonpositiveInitialDensity";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::DegenerateVelocity: return "DegenerateVelocity";
    case ErrorCode::NotCentered: return "NotCentered";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::BoundaryTouch: return "BoundaryTouch";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

namespace {
std::string where(std::size_t coordinate, double t)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "coordinate %zu at t = %.17g", coordinate + 1, t);
    return buf;
}
}  // namespace

Error boundary_touch(std::size_t coordinate, double t)
{
    Error e(ErrorCode::BoundaryTouch, "geodesic leaves the open simplex, " + where(coordinate, t));
    e.at_coordinate(coordinate).at_time(t);
    return e;
}

Error left_domain(std::size_t coordinate, double t)
{
    Error e(ErrorCode::LeftDomain, "integration state left the domain, " + where(coordinate, t));
    e.at_coordinate(coordinate).at_time(t);
    return e;
}

}  // namespace frg
