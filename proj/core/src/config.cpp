// SPDX-License-Identifier: Apache-2.0
#include "rsm/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("config: " + context + ": '" + text + "' is not a number");
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config: line " + std::to_string(line_no) + ": expected key = value",
                       line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError("config: line " + std::to_string(line_no) + ": empty key", line_no);
    config.values_[key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open '" + path + "'");
  return parse(in);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ParseError("config: missing key '" + key + "'");
  return it->second;
}

double KeyValueConfig::get_number(const std::string& key) const {
  return parse_double(get_string(key), "key '" + key + "'");
}

long long KeyValueConfig::get_integer(const std::string& key) const {
  const std::string text = get_string(key);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("config: key '" + key + "': '" + text + "' is not an integer");
  return value;
}

std::uint64_t KeyValueConfig::get_unsigned(const std::string& key) const {
  const std::string text = get_string(key);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("config: key '" + key + "': '" + text + "' is not an unsigned integer");
  return value;
}

std::vector<double> KeyValueConfig::get_number_list(const std::string& key) const {
  return parse_number_list(get_string(key), "key '" + key + "'");
}

std::vector<double> parse_number_list(const std::string& text, const std::string& context) {
  std::vector<double> values;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) values.push_back(parse_double(trim(item), context));
  if (values.empty()) throw ParseError("config: " + context + ": empty list");
  return values;
}

}  // namespace rsm
