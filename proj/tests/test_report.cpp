#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "sns/errors.hpp"
#include "sns/report.hpp"
#include "sns/suites.hpp"

using namespace sns;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sns_test_report_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report sample_report() {
  Report r;
  r.suite = "demo";
  r.at_most("tag-a", "residual", 1e-13, 1e-12);
  r.at_least("tag-b", "lower bound", 0.93, 0.9, 0.01);
  r.stable("tag-c", "change", 1.0, 1.2, 0.15);
  r.finite("tag-c", "max_ratio", 0.1 + 0.2);
  r.check("tag-d", "flag", true);
  for (auto& row : r.rows) row.suite = "demo";
  return r;
}

}  // namespace

TEST_CASE("row helpers decide pass") {
  const Report r = sample_report();
  REQUIRE(r.rows.size() == 5);
  CHECK(r.rows[0].pass);
  CHECK(r.rows[1].pass);
  CHECK_FALSE(r.rows[2].pass);  // |1.2 / 1 - 1| = 0.2 > 0.15
  CHECK(r.rows[2].value == doctest::Approx(0.2));
  CHECK(std::isinf(r.rows[3].threshold));
  CHECK_FALSE(r.passed());
  CHECK(r.passed("tag-a"));
  CHECK_FALSE(r.passed("tag-c"));
  CHECK(r.tags() == std::vector<std::string>{"tag-a", "tag-b", "tag-c", "tag-d"});
  Report nan;
  nan.finite("x", "y", std::numeric_limits<double>::quiet_NaN());
  CHECK_FALSE(nan.passed());
}

TEST_CASE("CSV round trip is exact") {
  const auto dir = scratch("csv");
  const Report r = sample_report();
  write_csv(dir / "demo.csv", r);
  CHECK(slurp(dir / "demo.csv").rfind("suite,tag,quantity,value,error_bar,threshold,pass\n", 0) == 0);
  const auto rows = read_csv(dir / "demo.csv");
  REQUIRE(rows.size() == r.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].suite == r.rows[i].suite);
    CHECK(rows[i].tag == r.rows[i].tag);
    CHECK(rows[i].quantity == r.rows[i].quantity);
    CHECK(rows[i].value == r.rows[i].value);
    CHECK(rows[i].error_bar == r.rows[i].error_bar);
    CHECK(rows[i].threshold == r.rows[i].threshold);
    CHECK(rows[i].pass == r.rows[i].pass);
  }
  CHECK(diff_reports(rows, r.rows).identical());
  std::filesystem::remove_all(dir);
}

TEST_CASE("diff reports value, pass and presence changes") {
  const Report r = sample_report();
  std::vector<ReportRow> b = r.rows;
  b[0].value = 2e-13;
  b.pop_back();
  ReportRow extra = b[0];
  extra.quantity = "new";
  b.push_back(extra);
  const DiffResult d = diff_reports(r.rows, b);
  CHECK(d.lines.size() == 3);
  CHECK(diff_reports(r.rows, b, 2.0).lines.size() == 2);  // value change within tolerance
}

TEST_CASE("JSON manifest") {
  Report r = sample_report();
  r.config = {{"seed", 1}};
  r.runtime_seconds = 1.5;
  const nlohmann::json j = to_json(r);
  CHECK(j.at("suite") == "demo");
  CHECK(j.at("pass") == false);
  CHECK(j.at("config_hash") == config_hash(r.config));
  CHECK(j.at("rows").size() == 5);
  CHECK(j.contains("timestamp"));
  CHECK(config_hash(r.config) == config_hash(nlohmann::json{{"seed", 1}}));
  CHECK(config_hash(r.config) != config_hash(nlohmann::json{{"seed", 2}}));
}

TEST_CASE("configuration overrides and rejection") {
  const SuiteConfig c = suite_config_from_json(nlohmann::json::parse(
      R"({"seed": 5, "grid": {"m_tangential": 64, "m_normal": 64}, "theorem1_paths": 10})"));
  CHECK(c.seed == 5);
  CHECK(c.grid.m_tangential == 64);
  CHECK(c.grid.dt == 1e-3);
  CHECK(c.theorem1_paths == 10);
  CHECK(c.corpus == 20);
  CHECK_THROWS_AS(suite_config_from_json(nlohmann::json::parse(R"({"sede": 5})")), ConfigurationError);
  CHECK_THROWS_AS(suite_config_from_json(nlohmann::json::parse(R"({"grid": {"m": 5}})")), ConfigurationError);
  // round trip through the manifest form
  const SuiteConfig back = suite_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));

  SuiteConfig bad;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigurationError);
  bad = SuiteConfig{};
  bad.solution.alpha = 0.2;
  CHECK_THROWS_AS(validate(bad), ConfigurationError);
}

TEST_CASE("suites: registry, unknown names and deterministic output") {
  CHECK(suite_names().size() == 12);
  SuiteConfig cfg;
  cfg.grid.m_tangential = cfg.grid.m_normal = 64;
  cfg.out = scratch("a");
  CHECK_THROWS_AS(run_suite("no-such-suite", cfg), DomainError);
  const Report a = run_suite("lp-partition", cfg);
  CHECK(a.passed());
  const auto first = slurp(cfg.out / "lp-partition.csv");
  cfg.out = scratch("b");
  run_suite("lp-partition", cfg);
  CHECK(slurp(cfg.out / "lp-partition.csv") == first);
  CHECK(std::filesystem::exists(cfg.out / "lp-partition.json"));
  std::filesystem::remove_all(cfg.out);
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "sns_test_report_a");
}

TEST_CASE("theorem2 without a stored run is an error") {
  SuiteConfig cfg;
  cfg.out = scratch("empty");
  CHECK_THROWS_AS(theorem2_suite(cfg), DomainError);
  std::filesystem::remove_all(cfg.out);
}
