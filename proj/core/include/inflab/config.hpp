#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace inflab {

/// Flat "section.key -> value" store parsed from INI-like text:
///
///   # comment
///   [params]
///   s = 0.25
///   p = 2
///
/// Keys before any header live in the unnamed section ("key" without a dot).
class Config {
public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& section, const std::string& key, std::string value);
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::optional<double> get_double(const std::string& section, const std::string& key) const;
  std::optional<int> get_int(const std::string& section, const std::string& key) const;
  std::optional<bool> get_bool(const std::string& section, const std::string& key) const;
  /// Comma separated list of numbers.
  std::optional<std::vector<double>> get_list(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;
};

std::vector<double> parse_number_list(const std::string& text);

}  // namespace inflab
