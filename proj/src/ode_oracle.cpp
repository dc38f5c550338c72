#include "frg/ode_oracle.hpp"

#include <cmath>
#include <string>

#include "frg/error.hpp"

namespace frg {

void IntegratorConfig::validate() const
{
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::InvalidArgument, "integrator step must be positive").for_field("step");
    }
    if (!std::isfinite(t_end) || t_end < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "t_end must be finite and non-negative")
            .for_field("t_end");
    }
    if (t_end > 0.0 && step > t_end) {
        throw Error(ErrorCode::InvalidArgument, "step exceeds t_end").for_field("step");
    }
}

std::size_t IntegratorConfig::step_count() const
{
    validate();
    const double ratio = t_end / step;
    auto steps = static_cast<std::size_t>(std::ceil(ratio));
    // Guard against ceil(3.0000000000000004) = 4 for an exact multiple.
    if (steps > 0 && std::abs(ratio - static_cast<double>(steps - 1)) < 1e-9) {
        --steps;
    }
    return steps;
}

namespace {

using Field = Eigen::VectorXd (*)(const Eigen::VectorXd&, const Eigen::VectorXd&);

// Acceleration from the coupled system with theta_last = 1 - sum(theta).
Eigen::VectorXd coupled_acceleration(const Eigen::VectorXd& theta, const Eigen::VectorXd& vel)
{
    const double last = 1.0 - theta.sum();
    const double sum_v = vel.sum();
    const Eigen::ArrayXd t = theta.array();
    const Eigen::ArrayXd v = vel.array();
    const double kinetic = (v.square() / t).sum();
    return (-0.5 * (t / last * sum_v * sum_v - v.square() / t + t * kinetic)).matrix();
}

Eigen::VectorXd decoupled_acceleration(const Eigen::VectorXd& y, const Eigen::VectorXd& z)
{
    return ((z.array().square() - y.array().square()) / (2.0 * y.array())).matrix();
}

// Index of the first coordinate at or below the domain threshold, or -1.
// For the coupled system the dependent coordinate counts as index n.
Eigen::Index domain_exit(const Eigen::VectorXd& x, bool with_last)
{
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (!(x[k] > kDomainEpsilon)) {
            return k;
        }
    }
    if (with_last && !(1.0 - x.sum() > kDomainEpsilon)) {
        return x.size();
    }
    return -1;
}

OdeTrajectory integrate(Eigen::VectorXd x, Eigen::VectorXd v, const IntegratorConfig& cfg,
                        Field accel, bool with_last)
{
    const std::size_t steps = cfg.step_count();
    OdeTrajectory out;
    out.times.reserve(steps + 1);
    out.states.reserve(steps + 1);
    out.times.push_back(0.0);
    out.states.push_back({x, v});

    auto check = [&](const Eigen::VectorXd& pos, double t) {
        const Eigen::Index k = domain_exit(pos, with_last);
        if (k >= 0) {
            throw left_domain(static_cast<std::size_t>(k), t);
        }
    };
    check(x, 0.0);

    double t = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t_next =
            i + 1 == steps ? cfg.t_end : static_cast<double>(i + 1) * cfg.step;
        const double h = t_next - t;

        const Eigen::VectorXd k1x = v;
        const Eigen::VectorXd k1v = accel(x, v);
        const Eigen::VectorXd x2 = x + 0.5 * h * k1x;
        check(x2, t + 0.5 * h);
        const Eigen::VectorXd k2x = v + 0.5 * h * k1v;
        const Eigen::VectorXd k2v = accel(x2, k2x);
        const Eigen::VectorXd x3 = x + 0.5 * h * k2x;
        check(x3, t + 0.5 * h);
        const Eigen::VectorXd k3x = v + 0.5 * h * k2v;
        const Eigen::VectorXd k3v = accel(x3, k3x);
        const Eigen::VectorXd x4 = x + h * k3x;
        check(x4, t_next);
        const Eigen::VectorXd k4x = v + h * k3v;
        const Eigen::VectorXd k4v = accel(x4, k4x);

        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t = t_next;
        check(x, t);
        out.times.push_back(t);
        out.states.push_back({x, v});
    }
    return out;
}

}  // namespace

OdeTrajectory integrate_coupled(const SimplexPoint& p0, const TangentVector& v0,
                                const IntegratorConfig& cfg)
{
    if (v0.dimension() != p0.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "tangent and point dimensions differ");
    }
    return integrate(p0.theta(), v0.v(), cfg, coupled_acceleration, true);
}

OdeTrajectory integrate_decoupled(const Eigen::VectorXd& y0, const Eigen::VectorXd& z0,
                                  const IntegratorConfig& cfg)
{
    if (y0.size() != z0.size() || y0.size() == 0) {
        throw Error(ErrorCode::InvalidArgument, "y0 and z0 must be non-empty and equally long");
    }
    for (Eigen::Index k = 0; k < y0.size(); ++k) {
        if (!(y0[k] > 0.0)) {
            throw Error(ErrorCode::NonpositiveInitialDensity,
                        "y0_" + std::to_string(k + 1) + " must be positive")
                .at_coordinate(static_cast<std::size_t>(k));
        }
    }
    return integrate(y0, z0, cfg, decoupled_acceleration, false);
}

}  // namespace frg
