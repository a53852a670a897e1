#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimech::io {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Deterministic CSV writer: fixed header line with version and config hash,
/// no timestamps, shortest round-trip numbers.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& config_sha256,
              const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
        out_ << "# casimech v" << CASIMECH_VERSION
             << ", config-sha256=" << config_sha256 << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        width_ = columns.size();
    }

    void row(const std::vector<double>& values) {
        if (values.size() != width_)
            throw std::runtime_error("csv row width mismatch");
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << format_double(values[i]);
        out_ << "\n";
    }

private:
    std::ofstream out_;
    std::size_t width_ = 0;
};

} // namespace casimech::io
