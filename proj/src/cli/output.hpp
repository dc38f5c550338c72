#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frg/error.hpp"

namespace frg::cli {

using Json = nlohmann::ordered_json;

/// %.17g, enough digits to round-trip any double.
std::string format_double(double v);

/// Zero-padded decimal index.
std::string padded(std::size_t index, int width);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(std::size_t v);
    /// Empty cell for a missing value.
    CsvWriter& cell(std::optional<double> v);
    CsvWriter& cell(const std::string& v);
    void end_row();

private:
    void separator();

    std::ofstream out_;
    std::filesystem::path path_;
    bool row_started_ = false;
};

void write_json(const std::filesystem::path& path, const Json& value);
Json read_json(const std::filesystem::path& path);

/// {"error", "message", "time"?, "coordinate"?, "field"?}; coordinate is 1-based.
Json error_to_json(const Error& e);

}  // namespace frg::cli
