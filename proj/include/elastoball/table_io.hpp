#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace elastoball::io {

/// Decimal scientific with 17 significant digits: doubles round-trip exactly,
/// so repeated runs produce byte-identical tables.
std::string sci(double v);

/// Comma-separated table with a leading `# key=value ...` configuration
/// comment and a header row naming the columns.
class Table {
  public:
    explicit Table(std::ostream& out) : out_(out) {}
    void config(const std::string& line);  // emitted as "# line"
    void header(std::span<const std::string> columns);
    void row(std::span<const double> values);
    void blank();  // block separator for multi-trajectory output

  private:
    std::ostream& out_;
};

/// `key = value` record writer for summary sidecars.
class KeyValueWriter {
  public:
    explicit KeyValueWriter(std::ostream& out) : out_(out) {}
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, double value);
    void put(const std::string& key, bool value);

  private:
    std::ostream& out_;
};

}  // namespace elastoball::io
