// sns: verification suites, solve jobs and report diffs.
//
// Exit status: 0 all rows pass, 1 some row fails or reports differ,
// 2 usage error, 3 configuration or domain error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sns/errors.hpp"
#include "sns/suites.hpp"

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kConfig = 3;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

std::string defaults_text() {
  return "Configuration file (JSON). Keys and defaults:\n" + sns::to_json(sns::SuiteConfig{}).dump(2);
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "JSON configuration; missing keys take their defaults")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed (default 1)");
  cmd->add_option("--out", o.out, "Output directory (default sns-out)");
  cmd->footer(defaults_text());
}

sns::SuiteConfig load(const CommonOptions& o) {
  sns::SuiteConfig cfg;
  if (!o.config.empty()) cfg = sns::suite_config_from_json(sns::read_json(o.config));
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  return cfg;
}

void print_rows(const sns::Report& r) {
  for (const auto& row : r.rows)
    std::printf("%-5s %-28s %-40s %14.6g  (threshold %.6g)\n", row.pass ? "ok" : "FAIL", row.tag.c_str(),
                row.quantity.c_str(), row.value, row.threshold);
  std::printf("%s: %s in %.1f s, written to %s\n", r.suite.c_str(), r.passed() ? "PASS" : "FAIL",
              r.runtime_seconds, r.config.value("out", std::string()).c_str());
}

int run(const std::string& suite, const sns::SuiteConfig& cfg) {
  const sns::Report r = sns::run_suite(suite, cfg);
  print_rows(r);
  return r.passed() ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Navier-Stokes half-space verification"};
  app.require_subcommand(1);
  app.footer(defaults_text());

  std::string suite;
  CommonOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run one verification suite");
  std::string suite_list;
  for (const auto& s : sns::suite_names()) suite_list += (suite_list.empty() ? "" : ", ") + s;
  verify->add_option("suite", suite, "One of: " + suite_list)->required();
  add_common(verify, verify_opts);

  std::string problem;
  CommonOptions solve_opts;
  std::optional<int> paths;
  std::string input;
  auto* solve = app.add_subcommand("solve", "Monte Carlo solve of the stopped problem");
  solve->add_option("problem", problem, "theorem1 (ensemble solve) or theorem2 (Besov regularity of a stored run)")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2"}));
  add_common(solve, solve_opts);
  solve->add_option("--paths", paths, "Number of paths (default 200 for theorem1, 50 for theorem2)");
  solve->add_option("--input", input, "theorem1 output directory for theorem2 (default <out>/theorem1)");

  auto* report = app.add_subcommand("report", "Report utilities");
  report->require_subcommand(1);
  std::string file_a, file_b;
  double rel_tol = 0.0;
  auto* diff = report->add_subcommand("diff", "Compare two CSV reports row by row");
  diff->add_option("a", file_a, "First CSV")->required()->check(CLI::ExistingFile);
  diff->add_option("b", file_b, "Second CSV")->required()->check(CLI::ExistingFile);
  diff->add_option("--rel-tol", rel_tol, "Relative tolerance on values (default 0: exact)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*verify) {
      const auto& names = sns::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "unknown suite '" << suite << "'; expected one of: " << suite_list << "\n";
        return kUsage;
      }
      return run(suite, load(verify_opts));
    }
    if (*solve) {
      sns::SuiteConfig cfg = load(solve_opts);
      if (paths) (problem == "theorem1" ? cfg.theorem1_paths : cfg.theorem2_paths) = *paths;
      if (!input.empty()) cfg.input = input;
      if (problem == "theorem2") {
        const auto dir = cfg.input.empty() ? cfg.out / "theorem1" : cfg.input;
        if (!std::filesystem::exists(dir / "manifest.json")) {
          std::cerr << "no stored theorem1 run in " << dir << "; run 'sns solve theorem1' first\n";
          return kUsage;
        }
      }
      return run(problem, cfg);
    }
    if (*diff) {
      const sns::DiffResult d = sns::diff_reports(sns::read_csv(file_a), sns::read_csv(file_b), rel_tol);
      for (const auto& l : d.lines) {
        if (l.only_in_a)
          std::printf("only in a: %s\n", l.key.c_str());
        else if (l.only_in_b)
          std::printf("only in b: %s\n", l.key.c_str());
        else
          std::printf("%s: %.17g -> %.17g (rel %.3g) pass %d -> %d\n", l.key.c_str(), l.a, l.b, l.relative,
                      l.pass_a, l.pass_b);
      }
      std::printf("%zu rows compared, %zu differ\n", d.compared, d.lines.size());
      return d.identical() ? 0 : kFail;
    }
  } catch (const sns::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const sns::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  }
  return kUsage;
}
