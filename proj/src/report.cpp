#include "sns/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sns/errors.hpp"
#include "sns/grid.hpp"

namespace sns {

ReportRow& Report::add(const std::string& tag, const std::string& quantity, double value, double threshold, bool pass,
                       double error_bar) {
  rows.push_back({suite, tag, quantity, value, error_bar, threshold, pass});
  return rows.back();
}

ReportRow& Report::at_most(const std::string& tag, const std::string& quantity, double value, double threshold,
                           double error_bar) {
  return add(tag, quantity, value, threshold, value <= threshold, error_bar);
}

ReportRow& Report::at_least(const std::string& tag, const std::string& quantity, double value, double threshold,
                            double error_bar) {
  return add(tag, quantity, value, threshold, value >= threshold, error_bar);
}

ReportRow& Report::stable(const std::string& tag, const std::string& quantity, double coarse, double fine,
                          double tol) {
  const double change = coarse != 0.0 ? std::abs(fine / coarse - 1.0) : std::numeric_limits<double>::infinity();
  return add(tag, quantity, change, tol, std::isfinite(coarse) && std::isfinite(fine) && change <= tol);
}

ReportRow& Report::finite(const std::string& tag, const std::string& quantity, double value) {
  return add(tag, quantity, value, std::numeric_limits<double>::infinity(), std::isfinite(value));
}

ReportRow& Report::check(const std::string& tag, const std::string& quantity, bool ok) {
  return add(tag, quantity, ok ? 1.0 : 0.0, 1.0, ok);
}

bool Report::passed() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return !rows.empty();
}

bool Report::passed(const std::string& tag) const {
  bool any = false;
  for (const auto& r : rows)
    if (r.tag == tag) {
      any = true;
      if (!r.pass) return false;
    }
  return any;
}

std::vector<std::string> Report::tags() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), r.tag) == out.end()) out.push_back(r.tag);
  return out;
}

std::string config_hash(const nlohmann::json& config) {
  const std::string s = config.dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s.data(), s.size())));
  return buf;
}

namespace {

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw DomainError("bad number in report: " + s);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* kHeader = "suite,tag,quantity,value,error_bar,threshold,pass";

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& r : rows)
    out += r.suite + "," + r.tag + "," + r.quantity + "," + number(r.value) + "," + number(r.error_bar) + "," +
           number(r.threshold) + "," + (r.pass ? "1" : "0") + "\n";
  return out;
}

void write_csv(const std::filesystem::path& path, const Report& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << to_csv(report.rows);
}

std::vector<ReportRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw StructuralError(path.string() + ": not a report CSV");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw StructuralError(path.string() + ": expected 7 columns in '" + line + "'");
    rows.push_back({f[0], f[1], f[2], parse_number(f[3]), parse_number(f[4]), parse_number(f[5]), f[6] == "1"});
  }
  return rows;
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row{{"tag", r.tag}, {"quantity", r.quantity}, {"pass", r.pass}};
    // JSON has no inf or nan
    row["value"] = std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json(number(r.value));
    row["error_bar"] = std::isfinite(r.error_bar) ? nlohmann::json(r.error_bar) : nlohmann::json(number(r.error_bar));
    row["threshold"] = std::isfinite(r.threshold) ? nlohmann::json(r.threshold) : nlohmann::json(number(r.threshold));
    rows.push_back(row);
  }
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {{"suite", report.suite},
          {"timestamp", stamp},
          {"config", report.config},
          {"config_hash", config_hash(report.config)},
          {"pass", report.passed()},
          {"runtime_seconds", report.runtime_seconds},
          {"rows", rows},
          {"details", report.details}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

void write_report(const std::filesystem::path& dir, const Report& report) {
  std::filesystem::create_directories(dir);
  write_csv(dir / (report.suite + ".csv"), report);
  write_json(dir / (report.suite + ".json"), to_json(report));
}

DiffResult diff_reports(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b, double rel_tol) {
  std::map<std::string, const ReportRow*> mb;
  for (const auto& r : b) mb[r.suite + "/" + r.tag + "/" + r.quantity] = &r;
  DiffResult res;
  std::map<std::string, bool> seen;
  for (const auto& r : a) {
    const std::string key = r.suite + "/" + r.tag + "/" + r.quantity;
    seen[key] = true;
    auto it = mb.find(key);
    DiffLine d{key, r.value, 0.0, 0.0, r.pass, false, false, false};
    if (it == mb.end()) {
      d.only_in_a = true;
      res.lines.push_back(d);
      continue;
    }
    ++res.compared;
    d.b = it->second->value;
    d.pass_b = it->second->pass;
    const double scale = std::max(std::abs(d.a), std::abs(d.b));
    const bool same = d.a == d.b || (std::isnan(d.a) && std::isnan(d.b));
    d.relative = same ? 0.0 : (scale > 0 && std::isfinite(scale) ? std::abs(d.a - d.b) / scale
                                                                 : std::numeric_limits<double>::infinity());
    if (d.relative > rel_tol || d.pass_a != d.pass_b) res.lines.push_back(d);
  }
  for (const auto& r : b) {
    const std::string key = r.suite + "/" + r.tag + "/" + r.quantity;
    if (!seen.count(key)) {
      DiffLine d{key, 0.0, r.value, 0.0, false, r.pass, false, true};
      res.lines.push_back(d);
    }
  }
  return res;
}

}  // namespace sns
