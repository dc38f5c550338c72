#include "cli/output.hpp"

#include <cstdio>

namespace frg::cli {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string padded(std::size_t index, int width)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, index);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path)
{
    if (!out_) {
        throw Error(ErrorCode::ConfigError, "cannot write " + path.string()).for_field("out");
    }
    for (const auto& name : header) {
        cell(name);
    }
    end_row();
}

void CsvWriter::separator()
{
    if (row_started_) {
        out_ << ',';
    }
    row_started_ = true;
}

CsvWriter& CsvWriter::cell(double v)
{
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::cell(std::size_t v)
{
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::cell(std::optional<double> v)
{
    separator();
    if (v) {
        out_ << format_double(*v);
    }
    return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v)
{
    separator();
    out_ << v;
    return *this;
}

void CsvWriter::end_row()
{
    out_ << '\n';
    row_started_ = false;
    if (!out_) {
        throw Error(ErrorCode::ConfigError, "write failed for " + path_.string()).for_field("out");
    }
}

void write_json(const std::filesystem::path& path, const Json& value)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::ConfigError, "cannot write " + path.string()).for_field("out");
    }
    out << value.dump(1) << '\n';
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
    }
    return Json::parse(in);
}

Json error_to_json(const Error& e)
{
    Json j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    if (e.time()) {
        j["time"] = *e.time();
    }
    if (e.coordinate()) {
        j["coordinate"] = *e.coordinate() + 1;
    }
    if (!e.field().empty()) {
        j["field"] = e.field();
    }
    return j;
}

}  // namespace frg::cli
