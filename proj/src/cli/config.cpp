#include "cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>

#include "frg/error.hpp"

namespace frg::cli {

namespace {

Error config_error(const std::string& field, const std::string& what)
{
    return std::move(Error(ErrorCode::ConfigError, field + ": " + what).for_field(field));
}

const std::map<std::string, std::string>& defaults(Kind kind)
{
    static const std::map<std::string, std::string> simplex{
        {"theta0", "1/3, 1/3"}, {"tau", ""},       {"tau_count", "12"}, {"direction", ""},
        {"t_start", "0"},       {"t_end", "pi/2"}, {"samples", "100"},
    };
    static const std::map<std::string, std::string> density{
        {"f0", "uniform1d"}, {"g0", "g01_1d"}, {"level", "6"},
        {"frames", "12"},    {"t_start", "0"}, {"t_end", "pi"},
    };
    static const std::map<std::string, std::string> pixelation{
        {"f0", "thirds_f0_1d"}, {"g0", "thirds_g0_1d"}, {"levels", "3, 4, 5, 6, 7, 8"},
        {"delta", "1/2"},       {"reference_level", ""},
    };
    static const std::map<std::string, std::string> moment{
        {"f0", "uniform1d"}, {"g0", "g01_1d"}, {"level", "6"},
        {"samples", "101"},  {"t_start", "0"}, {"t_end", "pi"},
    };
    static const std::map<std::string, std::string> oracle{
        {"theta0", "1/3, 1/3"}, {"tau", "1"},    {"direction", ""},
        {"step", "1e-3"},       {"t_end", "1"},  {"output_every", "10"},
    };
    switch (kind) {
    case Kind::SimplexGeodesic: return simplex;
    case Kind::DensityGeodesic: return density;
    case Kind::PixelationConvergence: return pixelation;
    case Kind::Moments: return moment;
    case Kind::OracleCompare: return oracle;
    }
    return simplex;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Recursive-descent parser for + - * / ( ) with numbers and pi.
class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse()
    {
        const double v = sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail();
        }
        return v;
    }

private:
    double sum()
    {
        double v = product();
        while (true) {
            skip_space();
            if (accept('+')) {
                v += product();
            } else if (accept('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }

    double product()
    {
        double v = unary();
        while (true) {
            skip_space();
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }

    double unary()
    {
        skip_space();
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return atom();
    }

    double atom()
    {
        skip_space();
        if (accept('(')) {
            const double v = sum();
            skip_space();
            if (!accept(')')) {
                fail();
            }
            return v;
        }
        if (text_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return std::numbers::pi;
        }
        const std::string rest(text_.substr(pos_));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            fail();
        }
        pos_ += used;
        return v;
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail() const
    {
        throw Error(ErrorCode::ConfigError, "cannot parse expression '" + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(Kind kind) noexcept
{
    switch (kind) {
    case Kind::SimplexGeodesic: return "simplex-geodesic";
    case Kind::DensityGeodesic: return "density-geodesic";
    case Kind::PixelationConvergence: return "pixelation-convergence";
    case Kind::Moments: return "moments";
    case Kind::OracleCompare: return "oracle-compare";
    }
    return "unknown";
}

Kind parse_kind(std::string_view name)
{
    for (Kind k : {Kind::SimplexGeodesic, Kind::DensityGeodesic, Kind::PixelationConvergence,
                   Kind::Moments, Kind::OracleCompare}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw config_error("kind", "unknown experiment '" + std::string(name) + "'");
}

double evaluate_expression(std::string_view text)
{
    const double v = ExpressionParser(text).parse();
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::ConfigError, "expression '" + std::string(text) + "' is not finite");
    }
    return v;
}

ExperimentConfig::ExperimentConfig(Kind kind, Format format, std::filesystem::path out)
    : kind_(kind), format_(format), out_(std::move(out)), values_(defaults(kind))
{
}

void ExperimentConfig::set(const std::string& key, const std::string& value)
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw config_error(key, std::string("unknown key for ") + std::string(to_string(kind_)));
    }
    it->second = trim(value);
}

void ExperimentConfig::set(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw config_error(trim(assignment), "expected key=value");
    }
    set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void ExperimentConfig::load(std::istream& in, const std::string& source)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        if (body.find('=') == std::string::npos) {
            throw config_error(body, source + ":" + std::to_string(line_no) + ": expected key = value");
        }
        set(body);
    }
}

void ExperimentConfig::load_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error("config", "cannot open " + path.string());
    }
    load(in, path.string());
}

const std::string& ExperimentConfig::text(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw config_error(key, "unknown key");
    }
    return it->second;
}

bool ExperimentConfig::is_set(const std::string& key) const { return !text(key).empty(); }

double ExperimentConfig::number(const std::string& key) const
{
    try {
        return evaluate_expression(text(key));
    } catch (const Error& e) {
        throw config_error(key, e.what());
    }
}

long ExperimentConfig::integer(const std::string& key) const
{
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw config_error(key, "expected an integer, got '" + text(key) + "'");
    }
    return static_cast<long>(v);
}

std::vector<double> ExperimentConfig::numbers(const std::string& key) const
{
    std::vector<double> out;
    const std::string& all = text(key);
    std::size_t start = 0;
    while (start <= all.size()) {
        const auto comma = all.find(',', start);
        const std::string item =
            trim(std::string_view(all).substr(start, comma == std::string::npos ? std::string::npos
                                                                               : comma - start));
        if (item.empty()) {
            if (!all.empty()) {
                throw config_error(key, "empty list item");
            }
            break;
        }
        try {
            out.push_back(evaluate_expression(item));
        } catch (const Error& e) {
            throw config_error(key, e.what());
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace frg::cli
