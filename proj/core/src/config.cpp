#include "inflab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "inflab/errors.hpp"

namespace inflab {
namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string join_key(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

double to_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw IOError("config: '" + what + "' is not a number: " + text);
  }
  if (trim(text.substr(used)).size() != 0) throw IOError("config: trailing text in '" + what + "': " + text);
  return v;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw IOError("config line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw IOError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw IOError("config line " + std::to_string(lineno) + ": empty key");
    cfg.set(section, key, value);
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  entries_[join_key(section, key)] = std::move(value);
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  auto it = entries_.find(join_key(section, key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Config::get_double(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  return to_double(*v, join_key(section, key));
}

std::optional<int> Config::get_int(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size())
    throw IOError("config: '" + join_key(section, key) + "' is not an integer: " + *v);
  return out;
}

std::optional<bool> Config::get_bool(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  std::string lower = *v;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") return true;
  if (lower == "false" || lower == "0" || lower == "no" || lower == "off") return false;
  throw IOError("config: '" + join_key(section, key) + "' is not a boolean: " + *v);
}

std::optional<std::vector<double>> Config::get_list(const std::string& section, const std::string& key) const {
  auto v = get(section, key);
  if (!v) return std::nullopt;
  return parse_number_list(*v);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(to_double(t, "list item"));
  }
  return out;
}

}  // namespace inflab
