#pragma once

#include <Eigen/Dense>

#include <vector>

#include "frg/measure_space.hpp"
#include "frg/simplex.hpp"

namespace frg {

inline constexpr double kMeanTolerance = 1e-12;
inline constexpr double kUnitSpeedTolerance = 1e-10;
inline constexpr double kDegenerateEnergy = 1e-14;
inline constexpr double kCenteringTolerance = 1e-10;

struct ScalarIvp {
    double alpha;
    double beta;
};

struct ScalarValue {
    double y;
    double ydot;
    double kinetic;
};

/// alpha = (y0^2 + z0^2) / y0, beta = atan(z0 / y0). Requires y0 > 0.
ScalarIvp solve_scalar_ivp(double y0, double z0);

/// y = alpha cos^2(t/2 - beta), its derivative, and alpha sin^2(t/2 - beta).
/// Division-free, so valid where y vanishes.
ScalarValue evaluate_scalar(double alpha, double beta, double t);

/// Initial velocity g0 with integral 0 and Fisher energy integral g0^2/f0 = 1
/// relative to a companion density f0.
class UnitVelocity {
public:
    static UnitVelocity create(const FiniteDensity& f0, SignedFunction g);

    [[nodiscard]] const SignedFunction& g() const noexcept { return g_; }
    [[nodiscard]] const MeasureSpace& space() const noexcept { return g_.space(); }

private:
    explicit UnitVelocity(SignedFunction g) : g_(std::move(g)) {}

    friend UnitVelocity normalize_velocity(const FiniteDensity&, const SignedFunction&);

    SignedFunction g_;
};

/// Per-point closed-form parameters of the flow f(x,t) = alpha(x) cos^2(t/2 - beta(x)).
class GeodesicState {
public:
    [[nodiscard]] const MeasureSpace& space() const noexcept { return f0_.space(); }
    [[nodiscard]] std::span<const double> alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::span<const double> beta() const noexcept { return beta_; }
    [[nodiscard]] const FiniteDensity& f0() const noexcept { return f0_; }
    [[nodiscard]] const SignedFunction& g0() const noexcept { return g0_; }

private:
    GeodesicState(FiniteDensity f0, SignedFunction g0, std::vector<double> alpha,
                  std::vector<double> beta);

    friend GeodesicState geodesic_flow(const FiniteDensity&, const UnitVelocity&);

    FiniteDensity f0_;
    SignedFunction g0_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
};

GeodesicState geodesic_flow(const FiniteDensity& f0, const UnitVelocity& g0);

/// f(., t). Zeros are allowed at isolated times.
FiniteDensity density_at(const GeodesicState& s, double t);

/// (df/dt)^2 / f at time t, computed as alpha sin^2(t/2 - beta).
FiniteDensity speed_density_at(const GeodesicState& s, double t);

/// Integral of g^2 / f0.
double fisher_energy(const FiniteDensity& f0, const SignedFunction& g);

/// g / sqrt(fisher_energy(f0, g)).
UnitVelocity normalize_velocity(const FiniteDensity& f0, const SignedFunction& g_raw);

/// w / |w|_J, a point of the unit Fisher ellipsoid at p.
TangentVector ellipsoid_tangent(const SimplexPoint& p, const Eigen::VectorXd& w_raw);

/// Unit tangent at (1/3, 1/3) parametrized by tau.
Eigen::Vector2d ellipse_param_n2(double tau);

/// Closed-form geodesic on the simplex, evaluated at each time.
/// Throws BoundaryTouch when a coordinate drops below kSimplexFloor.
std::vector<SimplexPoint> simplex_trajectory(const SimplexPoint& p0, const TangentVector& v0,
                                             const std::vector<double>& times);

/// The simplex geodesic as a GeodesicState on the counting measure over n+1 atoms.
GeodesicState simplex_geodesic_state(const SimplexPoint& p0, const TangentVector& v0);

/// Analytic position, velocity and acceleration of the simplex geodesic at t,
/// in the n free coordinates.
struct SimplexJet {
    Eigen::VectorXd theta;
    Eigen::VectorXd velocity;
    Eigen::VectorXd acceleration;
};
SimplexJet simplex_jet(const GeodesicState& s, double t);

}  // namespace frg
