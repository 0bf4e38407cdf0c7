// SPDX-License-Identifier: Apache-2.0
#include "rsm/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding blanks
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& field, long line_no, std::size_t column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("csv: line " + std::to_string(line_no) + ", column " +
                         std::to_string(column + 1) + ": '" + field + "' is not a number",
                     line_no);
  return value;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("csv: empty input", 0);
  ++line_no;
  if (!line.empty() && line.front() == '\xEF') line = line.substr(3);  // strip UTF-8 BOM

  const auto header = split_fields(line);
  int n = 0, r = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h.size() >= 2 && h[0] == 'x' && r == 0 && h.substr(1) == std::to_string(i + 1)) {
      ++n;
    } else if (h.size() >= 2 && h[0] == 'y' && h.substr(1) == std::to_string(i - n + 1)) {
      ++r;
    } else {
      throw ParseError("csv: line 1: unexpected header field '" + h +
                           "'; expected x1..xn,y1..yr",
                       1);
    }
  }
  if (n < 1) throw ParseError("csv: header declares no factor columns", 1);
  if (r < 1) throw ParseError("csv: header declares no response columns", 1);

  Dataset data;
  data.n = n;
  data.r = r;
  std::vector<Vector> y_rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != n + r)
      throw ParseError("csv: line " + std::to_string(line_no) + ": expected " +
                           std::to_string(n + r) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    Vector x(n), y(r);
    for (int j = 0; j < n; ++j) x(j) = parse_number(fields[j], line_no, j);
    for (int j = 0; j < r; ++j) y(j) = parse_number(fields[n + j], line_no, n + j);
    data.points.push_back(std::move(x));
    y_rows.push_back(std::move(y));
  }
  if (data.points.empty()) throw ParseError("csv: no data rows", line_no);
  data.y.resize(static_cast<int>(y_rows.size()), r);
  for (std::size_t i = 0; i < y_rows.size(); ++i) data.y.row(static_cast<int>(i)) = y_rows[i];
  return data;
}

Dataset read_dataset_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("csv: cannot open '" + path + "'", 0);
  return read_dataset_csv(in);
}

void write_design_csv(std::ostream& out, const std::vector<Vector>& points) {
  if (points.empty()) throw EmptyInput("write_design_csv: no points");
  const int n = static_cast<int>(points.front().size());
  for (int j = 0; j < n; ++j) out << (j ? ",x" : "x") << j + 1;
  out << "\n";
  char buf[40];
  for (const auto& pt : points) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", pt(j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace rsm
