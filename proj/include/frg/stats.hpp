#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

#include "frg/geodesic.hpp"

namespace frg {

struct MomentCurve {
    std::vector<double> times;
    /// mean[i][d], variance[i][d] at times[i] along axis d.
    std::vector<std::vector<double>> mean;
    std::vector<std::vector<double>> variance;
};

/// Coordinate-wise mean and variance of f(., t) on a grid state, with cell centers as x.
MomentCurve moments(const GeodesicState& state, const std::vector<double>& times);

enum class ConicKind { Ellipse, Line, Degenerate };

std::string_view to_string(ConicKind kind) noexcept;

struct ConicFit {
    ConicKind kind;
    /// Line: RMS distance to the fitted line. Otherwise: RMS algebraic residual
    /// of the unit-norm conic in normalized coordinates.
    double residual;
    /// (A, B, C, D, E, F) of A x^2 + B xy + C y^2 + D x + E y + F in normalized coordinates.
    Eigen::Matrix<double, 6, 1> coefficients;
    double discriminant;
};

inline constexpr double kDiscriminantCutoff = 1e-7;
inline constexpr double kCollinearCutoff = 1e-8;

/// Least-squares conic through at least 6 points.
ConicFit classify_conic(const std::vector<Eigen::Vector2d>& points);

struct TrigCoefficients {
    double a;
    double b;
    double c;
};

/// Least squares for y(t) = a cos^2(t/2) + b sin^2(t/2) + c sin t.
TrigCoefficients fit_trig_curve(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace frg
