#include "cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <variant>

#include "cli/output.hpp"
#include "frg/catalog.hpp"
#include "frg/error.hpp"
#include "frg/geodesic.hpp"
#include "frg/ode_oracle.hpp"
#include "frg/pixelation.hpp"
#include "frg/stats.hpp"

namespace frg::cli {

namespace {

namespace fs = std::filesystem;

// Errors raised before any computation starts are configuration errors.
struct ConfigFailure {
    Error error;
};

[[noreturn]] void reject(const std::string& field, const std::string& what)
{
    throw ConfigFailure{std::move(Error(ErrorCode::ConfigError, field + ": " + what).for_field(field))};
}

template <class F>
auto validated(const std::string& field, F&& make)
{
    try {
        return make();
    } catch (const Error& e) {
        Error copy = e;
        throw ConfigFailure{std::move(copy.for_field(field))};
    }
}

long positive_integer(const ExperimentConfig& c, const std::string& key, long min)
{
    const long v = validated(key, [&] { return c.integer(key); });
    if (v < min) {
        reject(key, "must be >= " + std::to_string(min));
    }
    return v;
}

std::vector<double> uniform_times(double t_start, double t_end, long count)
{
    std::vector<double> t(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        t[static_cast<std::size_t>(k)] =
            count == 1 ? t_start
                       : t_start + (t_end - t_start) * static_cast<double>(k) /
                                       static_cast<double>(count - 1);
    }
    return t;
}

Json config_json(const ExperimentConfig& c)
{
    Json j;
    j["kind"] = std::string(to_string(c.kind()));
    for (const auto& [key, value] : c.values()) {
        j[key] = value;
    }
    return j;
}

Json space_json(const MeasureSpace& space)
{
    Json j;
    if (space.grid()) {
        j["kind"] = "dyadic";
        j["dimension"] = space.grid()->dimension();
        j["level"] = space.grid()->level();
        j["cells"] = space.grid()->cell_count();
    } else {
        j["kind"] = "counting";
        j["atoms"] = space.size();
    }
    return j;
}

Json state_json(const ExperimentConfig& c, const GeodesicState& state,
                const std::vector<double>& times)
{
    Json j;
    j["config"] = config_json(c);
    j["space"] = space_json(state.space());
    j["alpha"] = std::vector<double>(state.alpha().begin(), state.alpha().end());
    j["beta"] = std::vector<double>(state.beta().begin(), state.beta().end());
    Json frames = Json::object();
    for (double t : times) {
        const FiniteDensity f = density_at(state, t);
        frames[format_double(t)] = std::vector<double>(f.values().begin(), f.values().end());
    }
    j["frames"] = std::move(frames);
    return j;
}

void write_table(const ExperimentConfig& c, const std::string& stem,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::optional<double>>>& rows)
{
    if (c.format() == Format::Csv) {
        CsvWriter csv(c.out() / (stem + ".csv"), header);
        for (const auto& row : rows) {
            for (const auto& v : row) {
                csv.cell(v);
            }
            csv.end_row();
        }
        return;
    }
    Json j;
    j["config"] = config_json(c);
    j["columns"] = header;
    Json body = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const auto& v : row) {
            r.push_back(v ? Json(*v) : Json(nullptr));
        }
        body.push_back(std::move(r));
    }
    j["rows"] = std::move(body);
    write_json(c.out() / (stem + ".json"), j);
}

SimplexPoint read_point(const ExperimentConfig& c)
{
    const auto theta = validated("theta0", [&] { return c.numbers("theta0"); });
    return validated("theta0", [&] {
        return SimplexPoint(Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                                               static_cast<Eigen::Index>(theta.size())));
    });
}

// Unit tangent from `direction` if set, else from the n = 2 ellipse at each tau.
std::vector<TangentVector> read_velocities(const ExperimentConfig& c, const SimplexPoint& p,
                                           const std::vector<double>& taus)
{
    std::vector<TangentVector> out;
    if (c.is_set("direction")) {
        const auto w = validated("direction", [&] { return c.numbers("direction"); });
        if (static_cast<Eigen::Index>(w.size()) != p.dimension()) {
            reject("direction", "needs " + std::to_string(p.dimension()) + " entries");
        }
        out.push_back(validated("direction", [&] {
            return ellipsoid_tangent(
                p, Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())));
        }));
        return out;
    }
    if (p.dimension() != 2) {
        reject("tau", "the tau parametrization needs a 2-dimensional theta0; set direction instead");
    }
    for (double tau : taus) {
        out.push_back(ellipsoid_tangent(p, ellipse_param_n2(tau)));
    }
    return out;
}

struct GridSetup {
    BoxFunction f0;
    BoxFunction g0;
    int level;
};

GridSetup read_grid_setup(const ExperimentConfig& c)
{
    BoxFunction f0 = validated("f0", [&] { return catalog::resolve(c.text("f0")); });
    BoxFunction g0 = validated("g0", [&] { return catalog::resolve(c.text("g0")); });
    if (f0.dimension() != g0.dimension()) {
        reject("g0", "dimension differs from f0");
    }
    const long level = positive_integer(c, "level", 0);
    validated("level", [&] { return DyadicGrid(f0.dimension(), static_cast<int>(level)); });
    return {std::move(f0), std::move(g0), static_cast<int>(level)};
}

struct GridInputs {
    FiniteDensity f0;
    SignedFunction g0;
};

GridInputs project_inputs(const GridSetup& s)
{
    const DyadicGrid grid(s.f0.dimension(), s.level);
    const SignedFunction fj = cell_average_projection(s.f0, grid);
    FiniteDensity f0 = validated("f0", [&] {
        return FiniteDensity(fj.space(), std::vector<double>(fj.values().begin(), fj.values().end()));
    });
    if (!f0.strictly_positive()) {
        reject("f0", "projected density is not strictly positive");
    }
    SignedFunction g0 = cell_average_projection(s.g0, grid);
    validated("g0", [&] {
        if (std::abs(integrate(g0)) > kCenteringTolerance) {
            throw Error(ErrorCode::NotCentered, "projected velocity does not integrate to 0");
        }
        return 0;
    });
    return {std::move(f0), std::move(g0)};
}

// Projected velocities are renormalized to unit speed, as in the pixelation scheme.
GeodesicState grid_state(const GridInputs& in)
{
    return geodesic_flow(in.f0, normalize_velocity(in.f0, in.g0));
}

// ---------------------------------------------------------------------------

void run_simplex(const ExperimentConfig& c)
{
    const SimplexPoint p = read_point(c);
    std::vector<double> taus;
    if (!c.is_set("direction")) {
        if (c.is_set("tau")) {
            taus = validated("tau", [&] { return c.numbers("tau"); });
        } else {
            const long count = positive_integer(c, "tau_count", 1);
            for (long k = 0; k < count; ++k) {
                taus.push_back(2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(count));
            }
        }
    }
    const auto velocities = read_velocities(c, p, taus);
    const double t0 = validated("t_start", [&] { return c.number("t_start"); });
    const double t1 = validated("t_end", [&] { return c.number("t_end"); });
    if (!(t1 > t0)) {
        reject("t_end", "must exceed t_start");
    }
    const auto times = uniform_times(t0, t1, positive_integer(c, "samples", 2));

    const auto n = static_cast<std::size_t>(p.dimension());
    for (std::size_t v = 0; v < velocities.size(); ++v) {
        const auto path = simplex_trajectory(p, velocities[v], times);
        const std::string stem = "trajectory_" + padded(v, 2);
        if (c.format() == Format::Json) {
            write_json(c.out() / (stem + ".json"),
                       state_json(c, simplex_geodesic_state(p, velocities[v]), times));
            continue;
        }
        std::vector<std::string> header{"t"};
        for (std::size_t k = 1; k <= n; ++k) {
            header.push_back("theta_" + std::to_string(k));
        }
        CsvWriter csv(c.out() / (stem + ".csv"), header);
        for (std::size_t i = 0; i < times.size(); ++i) {
            csv.cell(times[i]);
            for (Eigen::Index k = 0; k < p.dimension(); ++k) {
                csv.cell(path[i][k]);
            }
            csv.end_row();
        }
    }
}

void run_density(const ExperimentConfig& c)
{
    const GridSetup setup = read_grid_setup(c);
    const double t0 = validated("t_start", [&] { return c.number("t_start"); });
    const double t1 = validated("t_end", [&] { return c.number("t_end"); });
    const auto times = uniform_times(t0, t1, positive_integer(c, "frames", 1));
    const GridInputs inputs = project_inputs(setup);

    const GeodesicState state = grid_state(inputs);
    if (c.format() == Format::Json) {
        write_json(c.out() / "density.json", state_json(c, state, times));
        return;
    }
    const DyadicGrid& grid = *state.space().grid();
    std::vector<std::string> header{"cell_index"};
    for (int d = 1; d <= grid.dimension(); ++d) {
        header.push_back("x_center_" + std::to_string(d));
    }
    header.emplace_back("f_value");
    for (std::size_t i = 0; i < times.size(); ++i) {
        const FiniteDensity f = density_at(state, times[i]);
        CsvWriter csv(c.out() / ("frame_" + padded(i, 3) + ".csv"), header);
        for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
            csv.cell(cell);
            for (int d = 0; d < grid.dimension(); ++d) {
                csv.cell(grid.center_coordinate(cell, d));
            }
            csv.cell(f[cell]);
            csv.end_row();
        }
    }
}

void run_pixelation(const ExperimentConfig& c)
{
    BoxFunction f0 = validated("f0", [&] { return catalog::resolve(c.text("f0")); });
    BoxFunction g0 = validated("g0", [&] { return catalog::resolve(c.text("g0")); });
    if (f0.dimension() != g0.dimension()) {
        reject("g0", "dimension differs from f0");
    }
    if (f0.dimension() > 2) {
        reject("f0", "test functions exist for dimensions 1 and 2 only");
    }
    std::vector<int> levels;
    for (double v : validated("levels", [&] { return c.numbers("levels"); })) {
        if (v != std::floor(v) || v < 0.0) {
            reject("levels", "levels must be non-negative integers");
        }
        levels.push_back(static_cast<int>(v));
    }
    if (levels.empty()) {
        reject("levels", "at least one level is required");
    }
    const int max_level = *std::max_element(levels.begin(), levels.end());
    const int j_ref = c.is_set("reference_level")
                          ? static_cast<int>(positive_integer(c, "reference_level", 0))
                          : max_level + 4;
    if (j_ref <= max_level) {
        reject("reference_level", "must exceed every ladder level");
    }
    validated("reference_level", [&] { return DyadicGrid(f0.dimension(), j_ref); });
    const double delta = validated("delta", [&] { return c.number("delta"); });
    const PixelationLadder ladder =
        validated("f0", [&] { return build_ladder(f0, g0, levels, delta); });

    const auto tests = test_function_catalog(f0.dimension());
    std::vector<std::vector<std::optional<double>>> rows;
    for (const LadderLevel& level : ladder.levels) {
        std::optional<double> e_f;
        std::optional<double> e_g;
        std::optional<double> e_q;
        std::optional<double> w0;
        std::optional<double> w_half;
        auto raise = [](std::optional<double>& acc, double v) { acc = std::max(acc.value_or(0.0), v); };
        for (const TestFunction& phi : tests) {
            const ThreeTermErrors e = three_term_errors(ladder, level.j, phi, j_ref);
            raise(e_f, e.e_f);
            if (!level.degenerate) {
                raise(e_g, *e.e_g);
                raise(e_q, *e.e_q);
                raise(w0, weak_error(ladder, level.j, 0.0, phi, j_ref));
                raise(w_half, weak_error(ladder, level.j, std::numbers::pi / 2.0, phi, j_ref));
            }
        }
        rows.push_back({static_cast<double>(level.j), level.alpha, level.degenerate ? 1.0 : 0.0, e_f,
                        e_g, e_q, w0, w_half});
    }
    write_table(c, "ladder",
                {"j", "alpha_j", "degenerate", "e_f", "e_g", "e_q", "weak_error_t0", "weak_error_tpi2"},
                rows);
}

void run_moments(const ExperimentConfig& c)
{
    const GridSetup setup = read_grid_setup(c);
    const double t0 = validated("t_start", [&] { return c.number("t_start"); });
    const double t1 = validated("t_end", [&] { return c.number("t_end"); });
    const auto times = uniform_times(t0, t1, positive_integer(c, "samples", 1));
    const GridInputs inputs = project_inputs(setup);

    const MomentCurve curve = moments(grid_state(inputs), times);
    const int m = setup.f0.dimension();
    std::vector<std::string> header{"t"};
    for (int d = 1; d <= m; ++d) {
        header.push_back("mean_" + std::to_string(d));
    }
    for (int d = 1; d <= m; ++d) {
        header.push_back("var_" + std::to_string(d));
    }
    std::vector<std::vector<std::optional<double>>> rows;
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::optional<double>> row{times[i]};
        row.insert(row.end(), curve.mean[i].begin(), curve.mean[i].end());
        row.insert(row.end(), curve.variance[i].begin(), curve.variance[i].end());
        rows.push_back(std::move(row));
    }
    write_table(c, "moments", header, rows);
}

void run_oracle(const ExperimentConfig& c)
{
    const SimplexPoint p = read_point(c);
    std::vector<double> taus;
    if (!c.is_set("direction")) {
        taus = validated("tau", [&] { return c.numbers("tau"); });
        if (taus.size() != 1) {
            reject("tau", "oracle-compare takes exactly one tau");
        }
    }
    const TangentVector v = read_velocities(c, p, taus).front();
    IntegratorConfig cfg;
    cfg.step = validated("step", [&] { return c.number("step"); });
    cfg.t_end = validated("t_end", [&] { return c.number("t_end"); });
    validated("step", [&] {
        cfg.validate();
        return 0;
    });
    const auto every = static_cast<std::size_t>(positive_integer(c, "output_every", 1));
    const GeodesicState closed = validated("direction", [&] { return simplex_geodesic_state(p, v); });

    const OdeTrajectory rk4 = integrate_coupled(p, v, cfg);
    const auto n = static_cast<std::size_t>(p.dimension());
    std::vector<std::string> header{"t"};
    for (std::size_t k = 1; k <= n; ++k) {
        header.push_back("closed_" + std::to_string(k));
    }
    for (std::size_t k = 1; k <= n; ++k) {
        header.push_back("rk4_" + std::to_string(k));
    }
    header.emplace_back("abs_err");
    std::vector<std::vector<std::optional<double>>> rows;
    for (std::size_t i = 0; i < rk4.times.size(); ++i) {
        if (i % every != 0 && i + 1 != rk4.times.size()) {
            continue;
        }
        const double t = rk4.times[i];
        std::vector<std::optional<double>> row{t};
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            row.emplace_back(evaluate_scalar(closed.alpha()[k], closed.beta()[k], t).y);
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double y = rk4.states[i].position[static_cast<Eigen::Index>(k)];
            row.emplace_back(y);
            err = std::max(err, std::abs(y - *row[1 + k]));
        }
        row.emplace_back(err);
        rows.push_back(std::move(row));
    }
    write_table(c, "oracle", header, rows);
}

bool is_domain_error(ErrorCode code)
{
    return code == ErrorCode::DegenerateVelocity || code == ErrorCode::BoundaryTouch ||
           code == ErrorCode::LeftDomain;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& err)
{
    try {
        std::error_code ec;
        fs::create_directories(config.out(), ec);
        if (ec || !fs::is_directory(config.out())) {
            reject("out", "cannot create output directory " + config.out().string());
        }
        switch (config.kind()) {
        case Kind::SimplexGeodesic: run_simplex(config); break;
        case Kind::DensityGeodesic: run_density(config); break;
        case Kind::PixelationConvergence: run_pixelation(config); break;
        case Kind::Moments: run_moments(config); break;
        case Kind::OracleCompare: run_oracle(config); break;
        }
        return kExitOk;
    } catch (const ConfigFailure& f) {
        const Error& e = f.error;
        if (is_domain_error(e.code())) {
            // A domain failure during validation is still a domain failure.
            err << error_to_json(e).dump() << '\n';
            write_json(config.out() / "error.json", error_to_json(e));
            return kExitDomain;
        }
        err << error_to_json(e).dump() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        const Json j = error_to_json(e);
        err << j.dump() << '\n';
        if (!is_domain_error(e.code())) {
            return kExitConfig;
        }
        write_json(config.out() / "error.json", j);
        return kExitDomain;
    }
}

}  // namespace frg::cli
