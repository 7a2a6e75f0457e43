#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace slln {

// 17 significant digits round-trip every double exactly.
inline std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// One fixed-schema report file: LF line endings, RFC-style quoting, rows
// written in call order so identical runs are byte-identical.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path, std::ios::binary) {
        require(out_.good(), ErrorCode::IoError, "cannot open " + path);
        write_row(columns);
    }

    void write_row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << quoted(fields[i]);
        }
        out_ << '\n';
        require(out_.good(), ErrorCode::IoError, "write failed");
    }

    void close() {
        out_.close();
        require(!out_.fail(), ErrorCode::IoError, "close failed");
    }

  private:
    static std::string quoted(const std::string& f) {
        if (f.find_first_of(",\"\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            q += c;
            if (c == '"') q += '"';
        }
        q += '"';
        return q;
    }

    std::ofstream out_;
};

} // namespace slln
