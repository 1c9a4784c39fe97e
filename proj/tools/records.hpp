#pragma once

// CSV and JSON-lines record batches for the command-line tool.
//
// CSV: comma separated, header row required, '.' decimal point. Columns are
// located by header name; extra columns are ignored. JSON lines: one object
// per line with the same keys as the CSV header.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace catbend::cli {

enum class Schema { kGeo, kPlane };
enum class Format { kCsv, kJsonl };

inline std::pair<std::string_view, std::string_view> column_names(Schema s) {
  if (s == Schema::kGeo) return {"lat_deg", "lon_deg"};
  return {"x", "y"};
}

struct Record {
  std::size_t line = 0;  // 1-based source line
  double first = 0;      // lat_deg or x
  double second = 0;     // lon_deg or y
};

struct RecordBatch {
  Schema schema = Schema::kGeo;
  std::vector<Record> rows;
};

/// Malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_number(const std::string& text, std::size_t line,
                           std::string_view column) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || !std::isfinite(v)) {
    throw ParseError(line, "column " + std::string(column) + ": '" + text +
                               "' is not a finite number");
  }
  return v;
}

}  // namespace detail

inline RecordBatch read_csv(std::istream& in, Schema schema) {
  const auto [first_name, second_name] = column_names(schema);
  RecordBatch batch{schema, {}};
  std::string raw;
  std::size_t line = 0;
  std::optional<std::pair<std::size_t, std::size_t>> columns;
  std::size_t width = 0;

  while (std::getline(in, raw)) {
    ++line;
    if (line == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    if (detail::trim(raw).empty()) continue;
    const auto fields = detail::split_csv(detail::trim(raw));
    if (!columns) {
      std::optional<std::size_t> a, b;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == first_name) a = i;
        if (fields[i] == second_name) b = i;
      }
      if (!a || !b) {
        throw ParseError(line, "header must name columns " + std::string(first_name) +
                                   " and " + std::string(second_name));
      }
      columns = std::pair{*a, *b};
      width = fields.size();
      continue;
    }
    if (fields.size() != width) {
      throw ParseError(line, "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(fields.size()));
    }
    batch.rows.push_back({line,
                          detail::parse_number(fields[columns->first], line, first_name),
                          detail::parse_number(fields[columns->second], line, second_name)});
  }
  if (!columns) throw ParseError(line == 0 ? 1 : line, "missing CSV header");
  return batch;
}

inline RecordBatch read_jsonl(std::istream& in, Schema schema) {
  const auto [first_name, second_name] = column_names(schema);
  RecordBatch batch{schema, {}};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (detail::trim(raw).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, e.what());
    }
    const auto field = [&](std::string_view key) {
      const auto it = obj.is_object() ? obj.find(std::string(key)) : obj.end();
      if (it == obj.end() || !it->is_number()) {
        throw ParseError(line, "missing numeric key " + std::string(key));
      }
      return it->get<double>();
    };
    batch.rows.push_back({line, field(first_name), field(second_name)});
  }
  return batch;
}

inline RecordBatch read_records(std::istream& in, Schema schema, Format format) {
  return format == Format::kCsv ? read_csv(in, schema) : read_jsonl(in, schema);
}

/// printf %.{precision}g, with negative zero printed as 0.
inline std::string format_number(double v, int precision) {
  if (v == 0) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

/// Streams rows of one schema in CSV or JSON lines.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Schema schema, Format format, int precision)
      : out_(out), schema_(schema), format_(format), precision_(precision) {
    if (format_ == Format::kCsv) {
      const auto [a, b] = column_names(schema_);
      out_ << a << ',' << b << '\n';
    }
  }

  void write(double first, double second) {
    const auto [a, b] = column_names(schema_);
    const std::string fa = format_number(first, precision_);
    const std::string fb = format_number(second, precision_);
    if (format_ == Format::kCsv) {
      out_ << fa << ',' << fb << '\n';
    } else {
      out_ << "{\"" << a << "\":" << fa << ",\"" << b << "\":" << fb << "}\n";
    }
  }

 private:
  std::ostream& out_;
  Schema schema_;
  Format format_;
  int precision_;
};

}  // namespace catbend::cli
