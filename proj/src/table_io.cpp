#include "elastoball/table_io.hpp"

#include <cmath>
#include <cstdio>

namespace elastoball::io {

std::string sci(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void Table::config(const std::string& line) { out_ << "# " << line << "\n"; }

void Table::header(std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
}

void Table::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << sci(values[i]) << (i + 1 < values.size() ? "," : "");
    out_ << "\n";
}

void Table::blank() { out_ << "\n"; }

void KeyValueWriter::put(const std::string& key, const std::string& value) {
    out_ << key << " = " << value << "\n";
}

void KeyValueWriter::put(const std::string& key, double value) { put(key, sci(value)); }

void KeyValueWriter::put(const std::string& key, bool value) {
    put(key, std::string(value ? "true" : "false"));
}

}  // namespace elastoball::io
