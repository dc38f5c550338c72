#include "frg/stats.hpp"

#include <cmath>

#include "frg/error.hpp"
#include "frg/kernels.hpp"

namespace frg {

MomentCurve moments(const GeodesicState& state, const std::vector<double>& times)
{
    const auto& grid = state.space().grid();
    if (!grid) {
        throw Error(ErrorCode::InvalidArgument, "moments need a state on a dyadic grid");
    }
    const auto m = static_cast<std::size_t>(grid->dimension());
    const std::size_t cells = grid->cell_count();
    std::vector<std::vector<double>> x(m, std::vector<double>(cells));
    std::vector<std::vector<double>> x2(m, std::vector<double>(cells));
    for (std::size_t d = 0; d < m; ++d) {
        for (std::size_t c = 0; c < cells; ++c) {
            const double xc = grid->center_coordinate(c, static_cast<int>(d));
            x[d][c] = xc;
            x2[d][c] = xc * xc;
        }
    }
    const double w = grid->cell_weight();
    MomentCurve out{times, {}, {}};
    for (double t : times) {
        const FiniteDensity f = density_at(state, t);
        std::vector<double> mean(m);
        std::vector<double> var(m);
        for (std::size_t d = 0; d < m; ++d) {
            mean[d] = kernels::parallel::uniform_dot(f.values(), x[d], w);
            var[d] = kernels::parallel::uniform_dot(f.values(), x2[d], w) - mean[d] * mean[d];
        }
        out.mean.push_back(std::move(mean));
        out.variance.push_back(std::move(var));
    }
    return out;
}

std::string_view to_string(ConicKind kind) noexcept
{
    switch (kind) {
    case ConicKind::Ellipse: return "Ellipse";
    case ConicKind::Line: return "Line";
    case ConicKind::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

ConicFit classify_conic(const std::vector<Eigen::Vector2d>& points)
{
    if (points.size() < 6) {
        throw Error(ErrorCode::InsufficientPoints,
                    "conic fit needs 6 points, got " + std::to_string(points.size()));
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : points) {
        centroid += p;
    }
    centroid /= static_cast<double>(n);

    Eigen::MatrixXd centered(n, 2);
    double mean_dist = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector2d d = points[static_cast<std::size_t>(i)] - centroid;
        centered.row(i) = d.transpose();
        mean_dist += d.norm();
    }
    mean_dist /= static_cast<double>(n);

    ConicFit fit{ConicKind::Degenerate, 0.0, Eigen::Matrix<double, 6, 1>::Zero(), 0.0};
    const Eigen::JacobiSVD<Eigen::MatrixXd> spread(centered);
    const double hi = spread.singularValues()[0];
    const double lo = spread.singularValues()[1];
    if (!(hi > 0.0)) {
        return fit;
    }
    if (lo / hi <= kCollinearCutoff) {
        fit.kind = ConicKind::Line;
        fit.residual = lo / std::sqrt(static_cast<double>(n));
        return fit;
    }

    // Isotropic normalization: centroid at the origin, mean distance sqrt(2).
    const double scale = std::sqrt(2.0) / mean_dist;
    Eigen::MatrixXd design(n, 6);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector2d q = (points[static_cast<std::size_t>(i)] - centroid) * scale;
        design.row(i) << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(), q.x(), q.y(), 1.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinV);
    fit.coefficients = svd.matrixV().col(5);
    fit.residual = svd.singularValues()[5] / std::sqrt(static_cast<double>(n));
    const double a = fit.coefficients[0];
    const double b = fit.coefficients[1];
    const double c = fit.coefficients[2];
    fit.discriminant = (b * b - 4.0 * a * c) / fit.coefficients.squaredNorm();
    fit.kind = fit.discriminant < -kDiscriminantCutoff ? ConicKind::Ellipse : ConicKind::Degenerate;
    return fit;
}

TrigCoefficients fit_trig_curve(const std::vector<double>& times, const std::vector<double>& values)
{
    if (times.size() != values.size() || times.size() < 3) {
        throw Error(ErrorCode::InsufficientPoints, "trig fit needs at least 3 paired samples");
    }
    const auto n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd basis(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = times[static_cast<std::size_t>(i)];
        const double c = std::cos(0.5 * t);
        const double s = std::sin(0.5 * t);
        basis.row(i) << c * c, s * s, std::sin(t);
        rhs[i] = values[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3d x = basis.colPivHouseholderQr().solve(rhs);
    return {x[0], x[1], x[2]};
}

}  // namespace frg
