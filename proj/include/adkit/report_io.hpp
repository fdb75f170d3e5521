#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace adkit {

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string, bool>;

/// A report: key/value metadata, then rows under fixed columns.
///
/// CSV: "# key: value" lines, a header, one line per row.
/// JSON: {"meta": {...}, "columns": [...], "rows": [{column: value}, ...]},
/// with each row object keyed by exactly the CSV columns.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
  }
};

enum class OutputFormat { kCsv, kJson };

std::string format_double(double x);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string render(const Table& table, OutputFormat format);

}  // namespace adkit
