#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cauchylab {

/// Flat `key = value` configuration. Values are JSON literals, so numbers,
/// strings, and the nested arrays used for polynomial tables all parse the
/// same way. `#` starts a comment.
class Config {
public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> number_list(const std::string& key) const;
  std::vector<double> number_list_or(const std::string& key,
                                     std::vector<double> fallback) const;
  const nlohmann::json& raw(const std::string& key) const;

  const std::map<std::string, nlohmann::json>& entries() const { return values_; }

private:
  [[noreturn]] void missing(const std::string& key) const;
  std::map<std::string, nlohmann::json> values_;
  std::map<std::string, int> lines_;
  std::string origin_;
};

} // namespace cauchylab
