#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "frg/simplex.hpp"

namespace frg {

/// Integration aborts once a coordinate falls to this value.
inline constexpr double kDomainEpsilon = 1e-9;

/// Fixed-step classical RK4 on [0, t_end]. The final step is shortened to land on t_end.
struct IntegratorConfig {
    double step = 1e-3;
    double t_end = 0.0;

    void validate() const;
    [[nodiscard]] std::size_t step_count() const;
};

struct OdeState {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;
};

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<OdeState> states;
};

/// RK4 on the coupled geodesic system of the Fisher metric. theta_last is
/// recomputed from the free coordinates at every stage.
OdeTrajectory integrate_coupled(const SimplexPoint& p0, const TangentVector& v0,
                                const IntegratorConfig& cfg);

/// RK4 on the independent equations 2 y y'' + y^2 - y'^2 = 0, one per entry.
OdeTrajectory integrate_decoupled(const Eigen::VectorXd& y0, const Eigen::VectorXd& z0,
                                  const IntegratorConfig& cfg);

}  // namespace frg
