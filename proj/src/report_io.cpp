#include "adkit/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace adkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string(); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](std::uint64_t v) { return std::to_string(v); },
                        [](double v) { return format_double(v); },
                        [](const std::string& v) { return csv_escape(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                    },
                    c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](std::int64_t v) { return nlohmann::ordered_json(v); },
                        [](std::uint64_t v) { return nlohmann::ordered_json(v); },
                        [](double v) {
                          return std::isfinite(v) ? nlohmann::ordered_json(v)
                                                  : nlohmann::ordered_json(nullptr);
                        },
                        [](const std::string& v) { return nlohmann::ordered_json(v); },
                        [](bool v) { return nlohmann::ordered_json(v); },
                    },
                    c);
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.meta) out << "# " << key << ": " << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  doc["meta"] = meta;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i)
      obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

std::string render(const Table& table, OutputFormat format) {
  return format == OutputFormat::kCsv ? to_csv(table) : to_json(table);
}

}  // namespace adkit
