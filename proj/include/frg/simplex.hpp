#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace frg {

/// Smallest accepted barycentric coordinate for a point of the open simplex.
inline constexpr double kSimplexFloor = 1e-12;

/// Point of the open n-simplex, stored by its n free coordinates.
/// theta_last() = 1 - sum(theta) is the dependent (n+1)-th coordinate.
class SimplexPoint {
public:
    explicit SimplexPoint(Eigen::VectorXd theta);

    [[nodiscard]] Eigen::Index dimension() const noexcept { return theta_.size(); }
    [[nodiscard]] const Eigen::VectorXd& theta() const noexcept { return theta_; }
    [[nodiscard]] double operator[](Eigen::Index i) const { return theta_[i]; }
    [[nodiscard]] double theta_last() const noexcept { return last_; }
    /// All n+1 coordinates.
    [[nodiscard]] Eigen::VectorXd barycentric() const;
    [[nodiscard]] double min_coordinate() const noexcept;

private:
    Eigen::VectorXd theta_;
    double last_;
};

/// Tangent vector in the n free coordinates; the implied last coordinate is -sum(v).
class TangentVector {
public:
    explicit TangentVector(Eigen::VectorXd v);

    [[nodiscard]] Eigen::Index dimension() const noexcept { return v_.size(); }
    [[nodiscard]] const Eigen::VectorXd& v() const noexcept { return v_; }
    [[nodiscard]] double operator[](Eigen::Index i) const { return v_[i]; }
    [[nodiscard]] double v_last() const { return -v_.sum(); }
    [[nodiscard]] Eigen::VectorXd full() const;

private:
    Eigen::VectorXd v_;
};

/// J_ij = delta_ij / theta_j + 1 / theta_last.
Eigen::MatrixXd fisher_matrix(const SimplexPoint& p);

/// g^ij = theta_i (delta_ij - theta_j).
Eigen::MatrixXd fisher_inverse(const SimplexPoint& p);

/// Determinant of 11^T + diag(c).
double rank_one_diag_det(const Eigen::VectorXd& c);

/// Inverse of 11^T + diag(c), closed form.
Eigen::MatrixXd rank_one_diag_inverse(const Eigen::VectorXd& c);

/// <u, w>_J = sum u_i w_i / theta_i + (sum u)(sum w) / theta_last, O(n).
double metric_inner(const SimplexPoint& p, const TangentVector& u, const TangentVector& w);

/// Gradient of log phi(x_atom, theta) in the n free parameters. atom is 1-based in 1..n+1.
Eigen::VectorXd score(std::size_t atom, const SimplexPoint& p);

/// sum_l score(l) score(l)^T theta_l.
Eigen::MatrixXd score_covariance(const SimplexPoint& p);

/// Christoffel symbols of the second kind Gamma^k_ij, indices 0-based.
class ChristoffelSymbols {
public:
    static constexpr Eigen::Index kDenseLimit = 64;

    explicit ChristoffelSymbols(const SimplexPoint& p);

    [[nodiscard]] Eigen::Index dimension() const noexcept { return theta_.size(); }
    [[nodiscard]] double operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) const;
    [[nodiscard]] bool dense() const noexcept { return !table_.empty(); }

private:
    [[nodiscard]] double evaluate(Eigen::Index k, Eigen::Index i, Eigen::Index j) const;

    Eigen::VectorXd theta_;
    double last_;
    std::vector<double> table_;
};

ChristoffelSymbols christoffel(const SimplexPoint& p);

/// Left-hand side of the coupled geodesic system, per k.
Eigen::VectorXd geodesic_residual_coupled(const SimplexPoint& p, const TangentVector& v,
                                          const Eigen::VectorXd& a);

/// 2 y a + y^2 - v^2.
double geodesic_residual_decoupled(double theta_k, double vel_k, double acc_k);

struct CurveSample {
    SimplexPoint point;
    TangentVector velocity;
};

/// Trapezoid rule for the integral of sqrt(<v, v>_J) on a uniform grid.
double fisher_length(const std::vector<CurveSample>& samples, double dt);

/// Trapezoid rule for the Euclidean speed of the (n+1)-coordinate embedding.
double euclidean_length(const std::vector<CurveSample>& samples, double dt);

}  // namespace frg
