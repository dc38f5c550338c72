#include "frg/simplex.hpp"

#include <cmath>
#include <string>

#include "frg/error.hpp"

namespace frg {

SimplexPoint::SimplexPoint(Eigen::VectorXd theta) : theta_(std::move(theta)), last_(0.0)
{
    if (theta_.size() < 1) {
        throw Error(ErrorCode::InvalidArgument, "simplex dimension must be >= 1");
    }
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
        if (!(theta_[i] >= kSimplexFloor) || !std::isfinite(theta_[i])) {
            throw Error(ErrorCode::InvalidArgument,
                        "theta_" + std::to_string(i + 1) + " is not inside the open simplex")
                .at_coordinate(static_cast<std::size_t>(i));
        }
    }
    last_ = 1.0 - theta_.sum();
    if (!(last_ >= kSimplexFloor)) {
        throw Error(ErrorCode::InvalidArgument, "coordinates sum to 1 or more")
            .at_coordinate(static_cast<std::size_t>(theta_.size()));
    }
}

Eigen::VectorXd SimplexPoint::barycentric() const
{
    Eigen::VectorXd out(theta_.size() + 1);
    out.head(theta_.size()) = theta_;
    out[theta_.size()] = last_;
    return out;
}

double SimplexPoint::min_coordinate() const noexcept { return std::min(theta_.minCoeff(), last_); }

TangentVector::TangentVector(Eigen::VectorXd v) : v_(std::move(v))
{
    if (v_.size() < 1) {
        throw Error(ErrorCode::InvalidArgument, "tangent dimension must be >= 1");
    }
    if (!v_.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "tangent vector must be finite");
    }
}

Eigen::VectorXd TangentVector::full() const
{
    Eigen::VectorXd out(v_.size() + 1);
    out.head(v_.size()) = v_;
    out[v_.size()] = v_last();
    return out;
}

Eigen::MatrixXd fisher_matrix(const SimplexPoint& p)
{
    const Eigen::Index n = p.dimension();
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / p.theta_last());
    j.diagonal() += p.theta().cwiseInverse();
    return j;
}

Eigen::MatrixXd fisher_inverse(const SimplexPoint& p)
{
    const Eigen::VectorXd& t = p.theta();
    Eigen::MatrixXd g = -t * t.transpose();
    g.diagonal() += t;
    return g;
}

double rank_one_diag_det(const Eigen::VectorXd& c)
{
    const Eigen::Index n = c.size();
    if (n < 1 || (c.array() <= 0.0).any()) {
        throw Error(ErrorCode::InvalidArgument, "rank-one lemma needs positive entries");
    }
    // prefix[i] = c_0 ... c_{i-1}, suffix[i] = c_i ... c_{n-1}
    Eigen::VectorXd prefix(n + 1);
    Eigen::VectorXd suffix(n + 1);
    prefix[0] = 1.0;
    suffix[n] = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] * c[i];
        suffix[n - 1 - i] = suffix[n - i] * c[n - 1 - i];
    }
    double cofactors = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cofactors += prefix[i] * suffix[i + 1];
    }
    return prefix[n] + cofactors;
}

Eigen::MatrixXd rank_one_diag_inverse(const Eigen::VectorXd& c)
{
    if (c.size() < 1 || (c.array() <= 0.0).any()) {
        throw Error(ErrorCode::InvalidArgument, "rank-one lemma needs positive entries");
    }
    // Cofactor matrix divided by the determinant, after dividing both by prod c.
    const Eigen::VectorXd r = c.cwiseInverse();
    const double s = r.sum();
    Eigen::MatrixXd out = -(r * r.transpose()) / (1.0 + s);
    out.diagonal() += r;
    return out;
}

double metric_inner(const SimplexPoint& p, const TangentVector& u, const TangentVector& w)
{
    if (u.dimension() != p.dimension() || w.dimension() != p.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "tangent and point dimensions differ");
    }
    const double diag = (u.v().array() * w.v().array() / p.theta().array()).sum();
    return diag + u.v().sum() * w.v().sum() / p.theta_last();
}

Eigen::VectorXd score(std::size_t atom, const SimplexPoint& p)
{
    const auto n = static_cast<std::size_t>(p.dimension());
    if (atom < 1 || atom > n + 1) {
        throw Error(ErrorCode::InvalidAtom,
                    "atom " + std::to_string(atom) + " outside 1.." + std::to_string(n + 1));
    }
    if (atom == n + 1) {
        return Eigen::VectorXd::Constant(p.dimension(), -1.0 / p.theta_last());
    }
    Eigen::VectorXd s = Eigen::VectorXd::Zero(p.dimension());
    const auto i = static_cast<Eigen::Index>(atom - 1);
    s[i] = 1.0 / p[i];
    return s;
}

Eigen::MatrixXd score_covariance(const SimplexPoint& p)
{
    const Eigen::Index n = p.dimension();
    const Eigen::VectorXd weights = p.barycentric();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index l = 0; l <= n; ++l) {
        const Eigen::VectorXd s = score(static_cast<std::size_t>(l + 1), p);
        cov.noalias() += weights[l] * s * s.transpose();
    }
    return cov;
}

ChristoffelSymbols::ChristoffelSymbols(const SimplexPoint& p)
    : theta_(p.theta()), last_(p.theta_last())
{
    const Eigen::Index n = theta_.size();
    if (n > kDenseLimit) {
        return;
    }
    const auto un = static_cast<std::size_t>(n);
    table_.resize(un * un * un);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                table_[(static_cast<std::size_t>(k) * un + static_cast<std::size_t>(i)) * un +
                       static_cast<std::size_t>(j)] = evaluate(k, i, j);
            }
        }
    }
}

double ChristoffelSymbols::evaluate(Eigen::Index k, Eigen::Index i, Eigen::Index j) const
{
    double bracket = theta_[k] / last_;
    if (i == j) {
        bracket += theta_[k] / theta_[i];
        if (j == k) {
            bracket -= 1.0 / theta_[i];
        }
    }
    return 0.5 * bracket;
}

double ChristoffelSymbols::operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) const
{
    if (table_.empty()) {
        return evaluate(k, i, j);
    }
    const auto un = static_cast<std::size_t>(theta_.size());
    return table_[(static_cast<std::size_t>(k) * un + static_cast<std::size_t>(i)) * un +
                  static_cast<std::size_t>(j)];
}

ChristoffelSymbols christoffel(const SimplexPoint& p) { return ChristoffelSymbols(p); }

Eigen::VectorXd geodesic_residual_coupled(const SimplexPoint& p, const TangentVector& v,
                                          const Eigen::VectorXd& a)
{
    if (v.dimension() != p.dimension() || a.size() != p.dimension()) {
        throw Error(ErrorCode::InvalidArgument, "residual operands differ in dimension");
    }
    const Eigen::ArrayXd theta = p.theta().array();
    const Eigen::ArrayXd vel = v.v().array();
    const double sum_v = vel.sum();
    const double kinetic = (vel.square() / theta).sum();
    return (2.0 * a.array() + theta / p.theta_last() * sum_v * sum_v - vel.square() / theta +
            theta * kinetic)
        .matrix();
}

double geodesic_residual_decoupled(double theta_k, double vel_k, double acc_k)
{
    if (!(theta_k > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "decoupled residual needs theta_k > 0");
    }
    return 2.0 * theta_k * acc_k + theta_k * theta_k - vel_k * vel_k;
}

namespace {

template <class Speed>
double trapezoid(const std::vector<CurveSample>& samples, double dt, Speed speed)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "dt must be positive");
    }
    if (samples.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (speed(samples.front()) + speed(samples.back()));
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        sum += speed(samples[i]);
    }
    return sum * dt;
}

}  // namespace

double fisher_length(const std::vector<CurveSample>& samples, double dt)
{
    return trapezoid(samples, dt, [](const CurveSample& s) {
        return std::sqrt(std::max(0.0, metric_inner(s.point, s.velocity, s.velocity)));
    });
}

double euclidean_length(const std::vector<CurveSample>& samples, double dt)
{
    return trapezoid(samples, dt, [](const CurveSample& s) { return s.velocity.full().norm(); });
}

}  // namespace frg
