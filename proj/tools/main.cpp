#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/output.hpp"
#include "frg/error.hpp"

namespace {

// FRG_THREADS caps the OpenMP team size.
void apply_thread_cap()
{
    const char* env = std::getenv("FRG_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
        std::cerr << "ignoring FRG_THREADS='" << env << "'\n";
        return;
    }
    omp_set_num_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv)
{
    using frg::cli::Kind;

    CLI::App app{"Fisher-Rao geodesics of probability densities"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::vector<std::string> overrides;

    const std::vector<std::pair<Kind, std::string>> commands{
        {Kind::SimplexGeodesic, "Closed-form geodesics on the probability simplex"},
        {Kind::DensityGeodesic, "Geodesic flow of a pixelated density"},
        {Kind::PixelationConvergence, "Renormalizers and weak errors across dyadic levels"},
        {Kind::Moments, "Mean and variance along a density geodesic"},
        {Kind::OracleCompare, "Closed form against RK4 on the coupled geodesic system"},
    };
    for (const auto& [kind, help] : commands) {
        CLI::App* sub = app.add_subcommand(std::string(frg::cli::to_string(kind)), help);
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--set", overrides, "key=value override, repeatable");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : frg::cli::kExitConfig;
    }
    apply_thread_cap();

    const Kind kind = frg::cli::parse_kind(app.get_subcommands().front()->get_name());
    frg::cli::ExperimentConfig config(kind,
                                      format == "json" ? frg::cli::Format::Json : frg::cli::Format::Csv,
                                      out_dir);
    try {
        if (!config_path.empty()) {
            config.load_file(config_path);
        }
        for (const auto& o : overrides) {
            config.set(o);
        }
    } catch (const frg::Error& e) {
        std::cerr << frg::cli::error_to_json(e).dump() << '\n';
        return frg::cli::kExitConfig;
    }
    return frg::cli::run(config, std::cerr);
}
