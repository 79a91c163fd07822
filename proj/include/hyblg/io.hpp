// Copyright 2026 The hyblg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBLG_IO_HPP
#define HYBLG_IO_HPP

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyblg/errors.hpp"

namespace hyblg {
namespace io {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

/// 17 significant digits: exact round trip for binary64.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Column-named rows plus a metadata block, written as CSV or JSON.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw Error("row width does not match table header");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// "# meta: {json}" line, header line, then rows.
  void write_csv(std::ostream& os, const Json& meta) const {
    os << "# meta: " << meta.dump() << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) write_csv_row(os, row);
  }

  void write_csv_row(std::ostream& os, const std::vector<Cell>& row) const {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              os << v;
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }

  Json to_json(const Json& meta) const {
    Json doc;
    doc["meta"] = meta;
    doc["columns"] = columns_;
    Json rows = Json::array();
    for (const auto& row : rows_) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::visit([&](const auto& v) { obj[columns_[i]] = v; }, row[i]);
      }
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// A CSV as written by Table: comment lines starting with '#', one header
/// line, comma-separated fields without quoting.
struct CsvDocument {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InvalidArgument("CSV has no column '" + name + "'");
  }

  bool has_column(const std::string& name) const {
    for (const auto& h : header)
      if (h == name) return true;
    return false;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvDocument read_csv(std::istream& is) {
  CsvDocument doc;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      doc.comments.push_back(line);
      continue;
    }
    auto fields = split_csv_line(line);
    if (doc.header.empty()) {
      doc.header = std::move(fields);
    } else {
      if (fields.size() != doc.header.size()) throw InvalidArgument("CSV row width mismatch: " + line);
      doc.rows.push_back(std::move(fields));
    }
  }
  if (doc.header.empty()) throw InvalidArgument("CSV has no header line");
  return doc;
}

}  // namespace io
}  // namespace hyblg

#endif  // HYBLG_IO_HPP
