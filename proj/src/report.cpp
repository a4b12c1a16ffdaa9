#include "qlevy/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "qlevy/types.hpp"

namespace qlevy {

bool Certification::pass() const {
  if (std::isnan(value)) return false;
  return lower_bound ? value >= -tolerance : value <= tolerance;
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::json report_json(const Report& report) {
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["pass"] = report.pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    // JSON has no NaN or infinity.
    if (std::isfinite(c.value))
      cj["value"] = c.value;
    else
      cj["value"] = format_number(c.value);
    cj["tolerance"] = c.tolerance;
    cj["bound"] = c.lower_bound ? "lower" : "upper";
    cj["pass"] = c.pass();
    j["checks"].push_back(std::move(cj));
  }
  j["data"] = report.data;
  return j;
}

CsvTable report_csv(const Report& report) {
  if (report.table) return *report.table;
  CsvTable t;
  std::vector<std::string> row;
  for (const auto& c : report.checks) {
    t.header.push_back(c.name);
    row.push_back(format_number(c.value));
  }
  if (!row.empty()) t.rows.push_back(std::move(row));
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::json)
    out << report_json(report).dump(2) << '\n';
  else
    write_csv(out, report_csv(report));
  out.flush();
  if (!out) throw Error(ErrorCode::io, "failed to write report");
}

}  // namespace qlevy
