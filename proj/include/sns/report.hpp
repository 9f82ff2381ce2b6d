#ifndef SNS_REPORT_HPP
#define SNS_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sns {

// One checked quantity. Comparison direction is carried by the row: pass
// is decided where the row is made, threshold is recorded for diffing.
struct ReportRow {
  std::string suite;
  std::string tag;       // property under test
  std::string quantity;
  double value = 0.0;
  double error_bar = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct Report {
  std::string suite;
  std::vector<ReportRow> rows;
  nlohmann::json config;   // effective configuration
  nlohmann::json details;  // suite specific payload (per-path tables etc.)
  double runtime_seconds = 0.0;

  ReportRow& add(const std::string& tag, const std::string& quantity, double value, double threshold, bool pass,
                 double error_bar = 0.0);
  // value <= threshold
  ReportRow& at_most(const std::string& tag, const std::string& quantity, double value, double threshold,
                     double error_bar = 0.0);
  // value >= threshold
  ReportRow& at_least(const std::string& tag, const std::string& quantity, double value, double threshold,
                      double error_bar = 0.0);
  // |a / b - 1| <= tol, recorded as the relative change
  ReportRow& stable(const std::string& tag, const std::string& quantity, double coarse, double fine, double tol);
  ReportRow& finite(const std::string& tag, const std::string& quantity, double value);
  ReportRow& check(const std::string& tag, const std::string& quantity, bool ok);

  bool passed() const;
  bool passed(const std::string& tag) const;
  std::vector<std::string> tags() const;
};

std::string config_hash(const nlohmann::json& config);

// CSV columns: suite,tag,quantity,value,error_bar,threshold,pass
std::string to_csv(const std::vector<ReportRow>& rows);
void write_csv(const std::filesystem::path& path, const Report& report);
std::vector<ReportRow> read_csv(const std::filesystem::path& path);

// Run manifest: suite, timestamp, config, config hash, rows, details.
nlohmann::json to_json(const Report& report);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

// Writes <dir>/<suite>.csv and <dir>/<suite>.json.
void write_report(const std::filesystem::path& dir, const Report& report);

struct DiffLine {
  std::string key;  // suite/tag/quantity
  double a = 0.0, b = 0.0;
  double relative = 0.0;
  bool pass_a = false, pass_b = false;
  bool only_in_a = false, only_in_b = false;
};

struct DiffResult {
  std::vector<DiffLine> lines;  // rows that differ beyond the tolerance
  std::size_t compared = 0;
  bool identical() const { return lines.empty(); }
};

DiffResult diff_reports(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b, double rel_tol = 0.0);

}  // namespace sns

#endif
