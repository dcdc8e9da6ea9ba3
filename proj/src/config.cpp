#include "cauchylab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cauchylab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path.string());
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config config;
  config.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(line_number) +
                               ": expected 'key = value'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(origin + ":" + std::to_string(line_number) +
                               ": empty key");
    if (config.values_.count(key))
      throw std::runtime_error(origin + ":" + std::to_string(line_number) +
                               ": duplicate key '" + key + "'");
    nlohmann::json parsed;
    if (!value.empty() && (value[0] == '[' || value[0] == '{' || value[0] == '"' ||
                           value[0] == '-' || value[0] == '+' ||
                           std::isdigit(static_cast<unsigned char>(value[0])))) {
      try {
        parsed = nlohmann::json::parse(value);
      } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(origin + ":" + std::to_string(line_number) +
                                 ": key '" + key + "': " + e.what());
      }
    } else {
      parsed = value;  // bare word → string
    }
    config.values_[key] = std::move(parsed);
    config.lines_[key] = line_number;
  }
  return config;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

void Config::missing(const std::string& key) const {
  throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
}

double Config::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) missing(key);
  if (!it->second.is_number())
    throw std::runtime_error(origin_ + ":" + std::to_string(lines_.at(key)) +
                             ": key '" + key + "' is not a number");
  return it->second.get<double>();
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::int64_t Config::integer(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) missing(key);
  if (!it->second.is_number_integer())
    throw std::runtime_error(origin_ + ":" + std::to_string(lines_.at(key)) +
                             ": key '" + key + "' is not an integer");
  return it->second.get<std::int64_t>();
}

std::int64_t Config::integer_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Config::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) missing(key);
  if (it->second.is_string()) return it->second.get<std::string>();
  return it->second.dump();
}

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

std::vector<double> Config::number_list(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) missing(key);
  if (!it->second.is_array())
    throw std::runtime_error(origin_ + ":" + std::to_string(lines_.at(key)) +
                             ": key '" + key + "' is not an array");
  std::vector<double> out;
  for (const auto& v : it->second) {
    if (!v.is_number())
      throw std::runtime_error(origin_ + ":" + std::to_string(lines_.at(key)) +
                               ": key '" + key + "' has a non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> Config::number_list_or(const std::string& key,
                                           std::vector<double> fallback) const {
  return has(key) ? number_list(key) : fallback;
}

const nlohmann::json& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) missing(key);
  return it->second;
}

} // namespace cauchylab
