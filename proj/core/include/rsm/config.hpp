// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rsm {

/// Flat key = value configuration file ('#' comments, blank lines ignored).
/// Values stay strings until a typed accessor parses them; accessors throw
/// ParseError with the offending key in the message.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  long long get_integer(const std::string& key) const;
  std::uint64_t get_unsigned(const std::string& key) const;
  std::vector<double> get_number_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Comma-separated list of numbers (used by --weights and config lists).
std::vector<double> parse_number_list(const std::string& text, const std::string& context);

}  // namespace rsm
