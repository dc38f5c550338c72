#include "frg/geodesic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frg/error.hpp"
#include "frg/kernels.hpp"

namespace frg {

ScalarIvp solve_scalar_ivp(double y0, double z0)
{
    if (!(y0 > 0.0)) {
        throw Error(ErrorCode::NonpositiveInitialDensity,
                    "initial value must be positive, got " + std::to_string(y0));
    }
    return {(y0 * y0 + z0 * z0) / y0, std::atan(z0 / y0)};
}

ScalarValue evaluate_scalar(double alpha, double beta, double t)
{
    const double phase = 0.5 * t - beta;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return {alpha * c * c, -alpha * c * s, alpha * s * s};
}

double fisher_energy(const FiniteDensity& f0, const SignedFunction& g)
{
    if (!(f0.space() == g.space())) {
        throw Error(ErrorCode::SpaceMismatch, "density and velocity live on different spaces");
    }
    if (!f0.strictly_positive()) {
        throw Error(ErrorCode::NonpositiveInitialDensity, "initial density must be strictly positive");
    }
    std::vector<double> ratio(g.size());
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        ratio[i] = g[i] * g[i] / f0[i];
    }
    return integrate(f0.space(), ratio);
}

UnitVelocity UnitVelocity::create(const FiniteDensity& f0, SignedFunction g)
{
    const double mean = integrate(g);
    if (std::abs(mean) > kMeanTolerance) {
        throw Error(ErrorCode::NotCentered,
                    "velocity integrates to " + std::to_string(mean) + ", expected 0");
    }
    const double energy = fisher_energy(f0, g);
    if (std::abs(energy - 1.0) > kUnitSpeedTolerance) {
        throw Error(ErrorCode::NotUnitSpeed,
                    "integral of g^2/f0 is " + std::to_string(energy) + ", expected 1");
    }
    return UnitVelocity(std::move(g));
}

UnitVelocity normalize_velocity(const FiniteDensity& f0, const SignedFunction& g_raw)
{
    const double mean = integrate(g_raw);
    if (std::abs(mean) > kCenteringTolerance) {
        throw Error(ErrorCode::NotCentered,
                    "velocity integrates to " + std::to_string(mean) + ", expected 0");
    }
    const double energy = fisher_energy(f0, g_raw);
    if (!(energy > kDegenerateEnergy)) {
        throw Error(ErrorCode::DegenerateVelocity,
                    "velocity has Fisher energy " + std::to_string(energy));
    }
    return UnitVelocity(g_raw.scaled(1.0 / std::sqrt(energy)));
}

GeodesicState::GeodesicState(FiniteDensity f0, SignedFunction g0, std::vector<double> alpha,
                             std::vector<double> beta)
    : f0_(std::move(f0)), g0_(std::move(g0)), alpha_(std::move(alpha)), beta_(std::move(beta))
{
}

GeodesicState geodesic_flow(const FiniteDensity& f0, const UnitVelocity& g0)
{
    if (!(f0.space() == g0.space())) {
        throw Error(ErrorCode::SpaceMismatch, "density and velocity live on different spaces");
    }
    const double energy = fisher_energy(f0, g0.g());
    if (std::abs(energy - 1.0) > kUnitSpeedTolerance) {
        throw Error(ErrorCode::NotUnitSpeed,
                    "integral of g^2/f0 is " + std::to_string(energy) + ", expected 1");
    }
    std::vector<double> alpha(f0.size());
    std::vector<double> beta(f0.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const ScalarIvp ivp = solve_scalar_ivp(f0[i], g0.g()[i]);
        alpha[i] = ivp.alpha;
        beta[i] = ivp.beta;
    }
    return GeodesicState(f0, g0.g(), std::move(alpha), std::move(beta));
}

namespace {

std::pair<std::vector<double>, std::vector<double>> flow_values(const GeodesicState& s, double t)
{
    std::vector<double> density(s.alpha().size());
    std::vector<double> kinetic(s.alpha().size());
    kernels::parallel::geodesic_flow(s.alpha(), s.beta(), t, density, kinetic);
    return {std::move(density), std::move(kinetic)};
}

}  // namespace

FiniteDensity density_at(const GeodesicState& s, double t)
{
    return FiniteDensity(s.space(), flow_values(s, t).first);
}

FiniteDensity speed_density_at(const GeodesicState& s, double t)
{
    return FiniteDensity(s.space(), flow_values(s, t).second);
}

TangentVector ellipsoid_tangent(const SimplexPoint& p, const Eigen::VectorXd& w_raw)
{
    if (w_raw.size() != p.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "direction and point dimensions differ");
    }
    if (w_raw.isZero(0.0)) {
        throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");
    }
    const TangentVector w(w_raw);
    return TangentVector(w_raw / std::sqrt(metric_inner(p, w, w)));
}

Eigen::Vector2d ellipse_param_n2(double tau)
{
    const double k = std::numbers::sqrt2 / 6.0;
    const double c = std::numbers::sqrt3 * std::cos(tau);
    const double s = std::sin(tau);
    return {k * (-c + s), k * (c + s)};
}

GeodesicState simplex_geodesic_state(const SimplexPoint& p0, const TangentVector& v0)
{
    if (v0.dimension() != p0.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "tangent and point dimensions differ");
    }
    const auto atoms = static_cast<std::size_t>(p0.dimension() + 1);
    const Eigen::VectorXd theta = p0.barycentric();
    const Eigen::VectorXd vel = v0.full();
    const MeasureSpace space = MeasureSpace::counting(atoms);
    const FiniteDensity f0(space, std::vector<double>(theta.data(), theta.data() + theta.size()));
    SignedFunction g(space, std::vector<double>(vel.data(), vel.data() + vel.size()));
    return geodesic_flow(f0, UnitVelocity::create(f0, std::move(g)));
}

std::vector<SimplexPoint> simplex_trajectory(const SimplexPoint& p0, const TangentVector& v0,
                                             const std::vector<double>& times)
{
    const GeodesicState state = simplex_geodesic_state(p0, v0);
    const Eigen::Index n = p0.dimension();
    std::vector<SimplexPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXd theta(n);
        for (Eigen::Index k = 0; k <= n; ++k) {
            const auto u = static_cast<std::size_t>(k);
            const double y = evaluate_scalar(state.alpha()[u], state.beta()[u], t).y;
            if (!(y >= kSimplexFloor)) {
                throw boundary_touch(u, t);
            }
            if (k < n) {
                theta[k] = y;
            }
        }
        out.emplace_back(std::move(theta));
    }
    return out;
}

SimplexJet simplex_jet(const GeodesicState& s, double t)
{
    const auto n = static_cast<Eigen::Index>(s.alpha().size()) - 1;
    SimplexJet jet{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto u = static_cast<std::size_t>(k);
        const double a = s.alpha()[u];
        const double phase = 0.5 * t - s.beta()[u];
        const double c = std::cos(phase);
        const double sn = std::sin(phase);
        jet.theta[k] = a * c * c;
        jet.velocity[k] = -a * c * sn;
        jet.acceleration[k] = -0.5 * a * (c * c - sn * sn);
    }
    return jet;
}

}  // namespace frg
