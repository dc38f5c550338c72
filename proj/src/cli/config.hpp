#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace frg::cli {

enum class Kind { SimplexGeodesic, DensityGeodesic, PixelationConvergence, Moments, OracleCompare };
enum class Format { Csv, Json };

std::string_view to_string(Kind kind) noexcept;
Kind parse_kind(std::string_view name);

/// Flat key = value experiment description. Only keys known for the
/// experiment kind are accepted; every key has a default.
class ExperimentConfig {
public:
    ExperimentConfig(Kind kind, Format format, std::filesystem::path out);

    /// Reads `key = value` lines; '#' starts a comment.
    void load(std::istream& in, const std::string& source);
    void load_file(const std::filesystem::path& path);
    /// `key=value` override from the command line.
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] Format format() const noexcept { return format_; }
    [[nodiscard]] const std::filesystem::path& out() const noexcept { return out_; }
    [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept { return values_; }

    [[nodiscard]] const std::string& text(const std::string& key) const;
    [[nodiscard]] double number(const std::string& key) const;
    [[nodiscard]] long integer(const std::string& key) const;
    [[nodiscard]] std::vector<double> numbers(const std::string& key) const;
    /// Empty string means the key is unset.
    [[nodiscard]] bool is_set(const std::string& key) const;

private:
    Kind kind_;
    Format format_;
    std::filesystem::path out_;
    std::map<std::string, std::string> values_;
};

/// Evaluates a scalar expression: numbers, `pi`, + - * /, parentheses.
double evaluate_expression(std::string_view text);

}  // namespace frg::cli
