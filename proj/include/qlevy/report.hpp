#pragma once

// Machine-readable experiment output. Numbers are printed with the shortest
// representation that round-trips, independent of the C++ locale.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qlevy {

/// A residual measured against a tolerance. With `lower_bound` set the
/// check is value >= -tolerance instead of value <= tolerance.
struct Certification {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;

  bool pass() const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  Report() = default;
  explicit Report(std::string name) : experiment(std::move(name)) {}

  std::string experiment;
  std::vector<Certification> checks;
  /// Experiment-specific payload for the JSON form.
  nlohmann::json data = nlohmann::json::object();
  /// Tabular payload for the CSV form; the checks are tabulated when absent.
  std::optional<CsvTable> table;

  bool pass() const;
};

enum class ReportFormat { json, csv };

std::string format_number(double x);
std::string csv_escape(const std::string& cell);

nlohmann::json report_json(const Report& report);
/// Header row plus data rows; without a table, one column per check.
CsvTable report_csv(const Report& report);

void write_csv(std::ostream& out, const CsvTable& table);
/// Throws Error{io} if the stream fails.
void emit_report(const Report& report, ReportFormat format, std::ostream& out);

}  // namespace qlevy
