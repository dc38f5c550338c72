// Acceptance run: one PASS/FAIL line per criterion, followed by its measured
// values and wall time. Exits non-zero if any criterion fails.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/output.hpp"
#include "frg/catalog.hpp"
#include "frg/error.hpp"
#include "frg/geodesic.hpp"
#include "frg/ode_oracle.hpp"
#include "frg/pixelation.hpp"
#include "frg/simplex.hpp"
#include "frg/stats.hpp"
#include "oracles.hpp"

using namespace frg;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Verdict()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("unexpected exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0.0 && secs > budget_s) {
        v.pass = false;
        v.detail += "; over time budget";
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s  C%-2d %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> t;
    for (int i = 0; i < n; ++i) {
        t.push_back(a + (b - a) * i / (n - 1));
    }
    return t;
}

/// First time any coordinate of a simplex geodesic reaches zero.
double first_touch(const GeodesicState& s)
{
    double t = INFINITY;
    for (double b : s.beta()) {
        t = std::min(t, pi + 2.0 * b);
    }
    return t;
}

double closed_vs_rk4(const SimplexPoint& p, const TangentVector& v, double t_end)
{
    const GeodesicState s = simplex_geodesic_state(p, v);
    const OdeTrajectory rk = integrate_coupled(p, v, IntegratorConfig{1e-3, t_end});
    double err = 0.0;
    for (std::size_t i = 0; i < rk.times.size(); ++i) {
        err = std::max(err, (simplex_jet(s, rk.times[i]).theta - rk.states[i].position).cwiseAbs().maxCoeff());
    }
    return err;
}

Verdict c1_oracle()
{
    std::mt19937_64 rng(101);
    int reached = 0;
    int total = 0;
    double err_full = 0.0;
    double err_pre = 0.0;
    std::string first_exit;
    for (Eigen::Index n : {2, 5}) {
        for (int k = 0; k < 20; ++k) {
            const SimplexPoint p = oracle::random_point(rng, n, 0.05);
            const TangentVector v = ellipsoid_tangent(p, oracle::random_vector(rng, n));
            ++total;
            try {
                err_full = std::max(err_full, closed_vs_rk4(p, v, pi));
                ++reached;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::LeftDomain) {
                    throw;
                }
                if (first_exit.empty()) {
                    first_exit = fmt("coordinate %zu at t=%.4f", *e.coordinate() + 1, *e.time());
                }
            }
            err_pre = std::max(err_pre, closed_vs_rk4(p, v, 0.8 * first_touch(simplex_geodesic_state(p, v))));
        }
    }
    const bool pass = reached == total && err_full <= 1e-6;
    return {pass, fmt("%d/%d starts integrate to pi (first exit: LeftDomain, %s); max err on completed runs %.2e; "
                      "max err on [0, 0.8 t_touch] %.2e",
                      reached, total, first_exit.empty() ? "none" : first_exit.c_str(), err_full, err_pre)};
}

Verdict c2_conservation()
{
    std::mt19937_64 rng(102);
    std::vector<MeasureSpace> spaces;
    for (int k = 0; k < 20; ++k) {
        spaces.push_back(MeasureSpace::counting(static_cast<std::size_t>(2 + k % 10)));
    }
    for (int k = 0; k < 20; ++k) {
        spaces.push_back(MeasureSpace::dyadic(DyadicGrid(1, 1 + k % 8)));
    }
    for (int k = 0; k < 10; ++k) {
        spaces.push_back(MeasureSpace::dyadic(DyadicGrid(2, 1 + k % 5)));
    }
    const auto times = linspace(0.0, 2.0 * pi, 100);
    double mass = 0.0;
    double speed = 0.0;
    for (const MeasureSpace& space : spaces) {
        const GeodesicState s = oracle::random_state(rng, space);
        for (double t : times) {
            mass = std::max(mass, std::abs(integrate(density_at(s, t)) - 1.0));
            speed = std::max(speed, std::abs(integrate(speed_density_at(s, t)) - 1.0));
        }
    }
    return {mass <= 1e-12 && speed <= 1e-12,
            fmt("%zu states x 100 times; max |mass-1| %.2e, max |energy-1| %.2e", spaces.size(), mass, speed)};
}

Verdict c3_matrix()
{
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    double identity = 0.0;
    double det = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Eigen::Index n = 1 + k % 50;
        const SimplexPoint p = oracle::random_point(rng, n, 0.1 / static_cast<double>(n + 1));
        identity = std::max(identity, max_abs(fisher_matrix(p) * fisher_inverse(p) -
                                              Eigen::MatrixXd::Identity(n, n)));
        Eigen::VectorXd c(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            c[i] = u(rng);
        }
        const double lu = oracle::lu_determinant(oracle::rank_one_plus_diag(c));
        det = std::max(det, std::abs(rank_one_diag_det(c) - lu) / std::abs(lu));
    }
    return {identity <= 1e-10 && det <= 1e-10,
            fmt("200 inputs, n <= 50; max |J J^-1 - I| %.2e, max rel det err %.2e", identity, det)};
}

Verdict c4_score()
{
    std::mt19937_64 rng(104);
    double mean_err = 0.0;
    double cov_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Eigen::Index n = 1 + k % 10;
        const SimplexPoint p = oracle::random_point(rng, n, 0.02);
        const Eigen::VectorXd w = p.barycentric();
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
        for (Eigen::Index l = 0; l <= n; ++l) {
            mean += w[l] * score(static_cast<std::size_t>(l + 1), p);
        }
        mean_err = std::max(mean_err, mean.cwiseAbs().maxCoeff());
        cov_err = std::max(cov_err, max_abs(score_covariance(p) - fisher_matrix(p)));
    }
    return {mean_err <= 1e-13 && cov_err <= 1e-12,
            fmt("100 points, n <= 10; max |E score| %.2e, max |Cov - J| %.2e", mean_err, cov_err)};
}

std::vector<Eigen::Vector2d> centroid_trajectory(double tau, double t_end)
{
    const SimplexPoint p0(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
    std::vector<Eigen::Vector2d> pts;
    for (const auto& q : simplex_trajectory(p0, TangentVector(ellipse_param_n2(tau)), linspace(0, t_end, 60))) {
        pts.emplace_back(q[0], q[1]);
    }
    return pts;
}

Verdict c5_ellipse()
{
    double quad = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Vector2d v = ellipse_param_n2(2.0 * pi * i / 1000.0);
        quad = std::max(quad, std::abs(v[0] * v[0] + v[1] * v[1] + v[0] * v[1] - 1.0 / 6.0));
    }
    bool kinds = true;
    double ellipse_res = 0.0;
    for (double tau : {0.3, 1.0, 2.0, 3.5, 4.2, 5.0, 6.0}) {
        const ConicFit fit = classify_conic(centroid_trajectory(tau, 1.2));
        kinds = kinds && fit.kind == ConicKind::Ellipse;
        ellipse_res = std::max(ellipse_res, fit.residual);
    }
    double line_res = 0.0;
    for (double tau : {pi / 2, 5 * pi / 6, 3 * pi / 2, 11 * pi / 6}) {
        const ConicFit fit = classify_conic(centroid_trajectory(tau, pi / 2));
        kinds = kinds && fit.kind == ConicKind::Line;
        line_res = std::max(line_res, fit.residual);
    }
    return {quad <= 1e-14 && kinds && ellipse_res <= 1e-8 && line_res <= 1e-10,
            fmt("max quadric err %.2e; classes %s; ellipse residual %.2e; line residual %.2e", quad,
                kinds ? "as expected" : "WRONG", ellipse_res, line_res)};
}

Verdict c6_exactness()
{
    const auto g01 = build_ladder(catalog::uniform1d(), catalog::g01_1d(), {2, 3, 4, 5, 6, 7, 8}, 1.0);
    const auto g02 = build_ladder(catalog::uniform1d(), catalog::g02_1d(), {3, 4, 5, 6, 7, 8}, 1.0);
    double dev = 0.0;
    for (int j = 3; j <= 8; ++j) {
        dev = std::max(dev, std::abs(g01.level(j).alpha - 1.0));
    }
    for (int j = 4; j <= 8; ++j) {
        dev = std::max(dev, std::abs(g02.level(j).alpha - 1.0));
    }
    const bool degenerate = g01.level(2).degenerate && g02.level(3).degenerate &&
                            !g01.level(3).degenerate && !g02.level(4).degenerate;
    return {dev <= 1e-15 && degenerate,
            fmt("max |alpha_j - 1| %.2e; degenerate levels %s", dev, degenerate ? "g01:2, g02:3" : "WRONG")};
}

Verdict c7_weak()
{
    const auto ladder =
        build_ladder(catalog::thirds_f0_1d(), catalog::thirds_g0_1d(), {3, 4, 5, 6, 7, 8}, 0.5);
    const int j_ref = ladder.max_level() + 4;
    int violations = 0;
    int checks = 0;
    double worst8 = 0.0;
    for (const TestFunction& phi : test_function_catalog(1)) {
        for (double t : {0.0, pi / 4, pi / 2, pi}) {
            double e[9];
            for (int j = 3; j <= 8; ++j) {
                e[j] = weak_error(ladder, j, t, phi, j_ref);
            }
            for (int j = 3; j <= 5; ++j) {
                ++checks;
                violations += e[j + 2] < e[j] ? 0 : 1;
            }
            worst8 = std::max(worst8, e[8]);
        }
    }
    return {violations == 0 && worst8 <= 1e-3,
            fmt("%d/%d strict-decrease checks violated; max weak_error(8) %.2e (bound 1e-3)", violations, checks,
                worst8)};
}

Verdict c8_moments()
{
    const auto times = linspace(0, pi, 101);
    const DyadicGrid grid1(1, 6);
    const auto project_state = [](const BoxFunction& f0, const BoxFunction& g0, const DyadicGrid& grid) {
        const SignedFunction f = cell_average_projection(f0, grid);
        const FiniteDensity d(f.space(), std::vector<double>(f.values().begin(), f.values().end()));
        return geodesic_flow(d, normalize_velocity(d, cell_average_projection(g0, grid)));
    };
    const MomentCurve m = moments(project_state(catalog::uniform1d(), catalog::g01_1d(), grid1), times);
    std::vector<double> mean;
    for (const auto& row : m.mean) {
        mean.push_back(row[0]);
    }
    const TrigCoefficients fit = fit_trig_curve(times, mean);
    const double coef = std::max({std::abs(fit.a - 0.5), std::abs(fit.b - 0.125), std::abs(fit.c + 1.0 / 32.0)});

    double curves = 0.0;
    for (int level = 4; level <= 6; ++level) {
        const DyadicGrid grid(2, level);
        const MomentCurve a = moments(project_state(catalog::uniform2d(), catalog::g02_2d(), grid), times);
        const MomentCurve b = moments(project_state(catalog::uniform2d(), catalog::g03_2d(), grid), times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            for (std::size_t d = 0; d < 2; ++d) {
                curves = std::max(curves, std::abs(a.mean[i][d] - b.mean[i][d]));
            }
        }
    }
    return {coef <= 1e-10 && curves <= 1e-12,
            fmt("(A,B,C) = (%.15f, %.15f, %.15f), max coef err %.2e; g02 vs g03 max mean gap %.2e", fit.a, fit.b,
                fit.c, coef, curves)};
}

Verdict c9_length()
{
    std::mt19937_64 rng(109);
    std::vector<GeodesicState> states;
    const SimplexPoint centroid(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
    states.push_back(simplex_geodesic_state(centroid, TangentVector(ellipse_param_n2(1.0))));
    for (Eigen::Index n : {2, 5}) {
        for (int k = 0; k < 4; ++k) {
            const SimplexPoint p = oracle::random_point(rng, n, 0.05);
            states.push_back(simplex_geodesic_state(p, ellipsoid_tangent(p, oracle::random_vector(rng, n))));
        }
    }
    double err = 0.0;
    for (const GeodesicState& s : states) {
        for (double T : {pi / 4, pi / 2, pi}) {
            const int samples = 10000;
            const double dt = T / (samples - 1);
            std::vector<CurveSample> curve;
            curve.reserve(samples);
            for (int i = 0; i < samples; ++i) {
                const SimplexJet jet = simplex_jet(s, dt * i);
                curve.push_back({SimplexPoint(jet.theta), TangentVector(jet.velocity)});
            }
            err = std::max(err, std::abs(fisher_length(curve, dt) - T));
        }
    }
    return {err <= 1e-6, fmt("%zu geodesics, 1e4 samples; max |L - T| %.2e", states.size(), err)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict c10_cli()
{
    using namespace frg::cli;
    const fs::path root = fs::temp_directory_path() / "frg-acceptance";
    fs::remove_all(root);
    const std::vector<std::pair<Kind, std::vector<std::string>>> runs{
        {Kind::SimplexGeodesic, {}},
        {Kind::DensityGeodesic, {}},
        {Kind::PixelationConvergence, {}},
        {Kind::Moments, {}},
        {Kind::OracleCompare, {}},
    };
    int files = 0;
    int differing = 0;
    int lossy = 0;
    int index = 0;
    for (const auto& [kind, sets] : runs) {
        for (Format format : {Format::Csv, Format::Json}) {
            std::vector<fs::path> dirs;
            for (int rep = 0; rep < 2; ++rep) {
                dirs.push_back(root / fmt("%d-%d", index, rep));
                ExperimentConfig c(kind, format, dirs.back());
                for (const auto& s : sets) {
                    c.set(s);
                }
                std::ostringstream err;
                if (run(c, err) != kExitOk) {
                    return {false, "run failed: " + err.str()};
                }
            }
            ++index;
            for (const auto& e : fs::directory_iterator(dirs[0])) {
                ++files;
                const std::string a = slurp(e.path());
                differing += a == slurp(dirs[1] / e.path().filename()) ? 0 : 1;
                if (format == Format::Json) {
                    const Json doc = read_json(e.path());
                    lossy += doc.dump(1) + "\n" == a && Json::parse(doc.dump()) == doc ? 0 : 1;
                }
            }
        }
    }
    fs::remove_all(root);
    return {differing == 0 && lossy == 0 && files > 0,
            fmt("%d files; %d differ between runs; %d JSON files not round-tripping", files, differing, lossy)};
}

}  // namespace

int main()
{
    if (const char* env = std::getenv("FRG_THREADS")) {
        omp_set_num_threads(std::atoi(env));
    }
    criterion(1, "closed form vs coupled RK4 on [0, pi]", 10.0, c1_oracle);
    criterion(2, "mass and speed conservation", 5.0, c2_conservation);
    criterion(3, "Fisher matrix lemmas", 2.0, c3_matrix);
    criterion(4, "score identities", 0.0, c4_score);
    criterion(5, "ellipse reproduction", 0.0, c5_ellipse);
    criterion(6, "pixelation exactness", 0.0, c6_exactness);
    criterion(7, "weak convergence on the misaligned catalog", 30.0, c7_weak);
    criterion(8, "moment dynamics", 0.0, c8_moments);
    criterion(9, "unit-speed arc length", 0.0, c9_length);
    criterion(10, "CLI determinism and JSON round-trip", 0.0, c10_cli);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
