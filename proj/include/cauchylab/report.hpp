#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace cauchylab {

/// One asserted inequality or equality: lhs, rhs, leftover slack, verdict.
struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<Table> tables;
  std::vector<Assertion> assertions;
  std::map<std::string, double> max_residuals;

  bool pass() const;
  void check(const std::string& name, double lhs, double rhs, double tolerance = 0.0);
  void check_equal(const std::string& name, double a, double b, double tolerance);
  void note_residual(const std::string& name, double value);  // keeps the max
};

/// CSV with a `# seed = N` comment line, a header row, and doubles
/// printed with 17 significant digits so reruns are byte-comparable.
void write_csv(const Table& table, std::uint64_t seed,
               const std::filesystem::path& path);

/// summary.json: kind, seed, assertions (name/lhs/rhs/slack/pass),
/// residual maxima, overall verdict.
void write_json_summary(const Report& report, const std::filesystem::path& path);

/// Polyline plot of column ycol against column xcol. Returns false (and
/// writes nothing) for an empty table.
bool write_svg_plot(const Table& table, std::size_t xcol, std::size_t ycol,
                    const std::filesystem::path& path, bool log_scale = false);

/// Writes every table as CSV, the JSON summary, and (optionally) one SVG
/// per (table, quantity column) pair into the directory.
void write_report(const Report& report, const std::filesystem::path& directory,
                  bool plots = false, bool log_scale = false);

} // namespace cauchylab
