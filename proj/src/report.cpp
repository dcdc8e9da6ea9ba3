#include "cauchylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace cauchylab {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

bool Report::pass() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.pass; });
}

void Report::check(const std::string& name, double lhs, double rhs, double tolerance) {
  Assertion a;
  a.name = name;
  a.lhs = lhs;
  a.rhs = rhs;
  a.slack = rhs + tolerance - lhs;
  a.pass = lhs <= rhs + tolerance;
  assertions.push_back(std::move(a));
}

void Report::check_equal(const std::string& name, double x, double y, double tolerance) {
  Assertion a;
  a.name = name;
  a.lhs = x;
  a.rhs = y;
  a.slack = tolerance - std::abs(x - y);
  a.pass = std::abs(x - y) <= tolerance;
  assertions.push_back(std::move(a));
}

void Report::note_residual(const std::string& name, double value) {
  auto it = max_residuals.find(name);
  if (it == max_residuals.end() || value > it->second) max_residuals[name] = value;
}

void write_csv(const Table& table, std::uint64_t seed,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  out << "# seed = " << seed << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
}

void write_json_summary(const Report& report, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["kind"] = report.kind;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& a : report.assertions) {
    nlohmann::ordered_json entry;
    entry["name"] = a.name;
    entry["lhs"] = a.lhs;
    entry["rhs"] = a.rhs;
    entry["slack"] = a.slack;
    entry["pass"] = a.pass;
    checks.push_back(entry);
  }
  j["assertions"] = checks;
  nlohmann::ordered_json residuals;
  for (const auto& [name, value] : report.max_residuals) residuals[name] = value;
  j["max_residuals"] = residuals;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_json_summary: cannot open " + path.string());
  out << j.dump(2) << "\n";
}

bool write_svg_plot(const Table& table, std::size_t xcol, std::size_t ycol,
                    const std::filesystem::path& path, bool log_scale) {
  if (table.rows.empty()) {
    std::cerr << "plot: table '" << table.name << "' is empty, skipping\n";
    return false;
  }
  if (xcol >= table.columns.size() || ycol >= table.columns.size())
    throw std::invalid_argument("write_svg_plot: column index out of range");

  const double width = 640, height = 420, margin = 56;
  auto transform_y = [&](double y) { return log_scale ? std::log10(std::max(y, 1e-300)) : y; };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[xcol]);
    xmax = std::max(xmax, row[xcol]);
    double y = transform_y(row[ycol]);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto py = [&](double y) {
    return height - margin - (transform_y(y) - ymin) / (ymax - ymin) * (height - 2 * margin);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << table.columns[xcol]
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << height / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << height / 2 << ")\">" << (log_scale ? "log10 " : "") << table.columns[ycol]
      << "</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
      << table.name << "</text>\n";

  std::vector<std::vector<double>> sorted = table.rows;
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto& a, const auto& b) { return a[xcol] < b[xcol]; });
  out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
  for (const auto& row : sorted) out << px(row[xcol]) << "," << py(row[ycol]) << " ";
  out << "\"/>\n";
  for (const auto& row : sorted)
    out << "<circle cx=\"" << px(row[xcol]) << "\" cy=\"" << py(row[ycol])
        << "\" r=\"2.5\" fill=\"#1f6fb2\"/>\n";
  out << "</svg>\n";
  return true;
}

void write_report(const Report& report, const std::filesystem::path& directory,
                  bool plots, bool log_scale) {
  std::filesystem::create_directories(directory);
  for (const auto& table : report.tables)
    write_csv(table, report.seed, directory / (table.name + ".csv"));
  write_json_summary(report, directory / "summary.json");
  if (plots) {
    for (const auto& table : report.tables) {
      if (table.columns.size() < 2) continue;
      for (std::size_t c = 1; c < table.columns.size(); ++c) {
        std::filesystem::path p =
            directory / (table.name + "_" + table.columns[c] + ".svg");
        write_svg_plot(table, 0, c, p, log_scale);
      }
    }
  }
}

} // namespace cauchylab
