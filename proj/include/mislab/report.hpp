#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mislab/ball.hpp"

namespace mislab {

// Deterministic formatting: midpoints in scientific notation with a fixed
// digit count, radii with 3 digits. No locale anywhere.
inline std::string fmt_mid(const BallReal& b, int digits = 15) { return b.to_string(digits); }

inline std::string fmt_rad(const BallReal& b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", b.rad_d());
    return buf;
}

// write-all-or-nothing via a temporary file in the same directory
inline void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::parse_error, "cannot open output file: " + path);
        out << content;
        if (!out.flush()) fail(errc::parse_error, "failed writing output file: " + path);
    }
    fs::rename(tmp, target);
}

inline void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_atomic(out_path, content);
}

struct CsvWriter {
    std::string buffer;

    void header(const std::vector<std::string>& cols) { row(cols); }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) buffer += ',';
            buffer += cells[i];
        }
        buffer += '\n';
    }
};

} // namespace mislab
