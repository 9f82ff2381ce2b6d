// Runs every suite at the default desk-scale configuration and prints one
// PASS/FAIL line per acceptance criterion.
//
//   sns_acceptance [--out dir] [--config file.json]

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sns/suites.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> suites;
  std::vector<std::string> tags;  // empty: every row of the suites
  double limit_seconds;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "Littlewood-Paley partition", {"lp-partition"}, {}, 5},
      {2, "band-wise heat decay", {"heat-decay"}, {}, 30},
      {3, "heat smoothing, q-uniformity", {"heat-smoothing"}, {"q-uniformity"}, 120},
      {4, "weighted heat smoothing", {"heat-smoothing"}, {"weighted-smoothing"}, 180},
      {5, "Newtonian potential Hessian", {"potential"}, {}, 120},
      {6, "weighted Hardy-Littlewood-Sobolev", {"hls"}, {}, 30},
      {7, "Helmholtz projection", {"helmholtz"}, {}, 180},
      {8, "linear Stokes", {"stokes-linear"}, {}, 300},
      {9, "duality estimate and stochastic moments", {"duality", "bdg"}, {}, 600},
      {10, "cutoff fixed point", {"fixedpoint"}, {}, 300},
      {11, "local existence ensemble", {"theorem1"}, {}, 1200},
      {12, "Besov regularity of the stored ensemble", {"theorem2"}, {}, 1200},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run over all verification suites"};
  std::string out = "sns-acceptance", config;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--config", config, "JSON configuration")->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  sns::SuiteConfig cfg;
  if (!config.empty()) cfg = sns::suite_config_from_json(sns::read_json(config));
  cfg.out = out;

  std::map<std::string, sns::Report> reports;
  std::map<std::string, std::string> errors;
  for (const auto& name : sns::suite_names()) {
    std::fprintf(stderr, "running %s ...\n", name.c_str());
    try {
      reports[name] = sns::run_suite(name, cfg);
      std::fprintf(stderr, "  %s in %.1f s\n", reports[name].passed() ? "pass" : "FAIL",
                   reports[name].runtime_seconds);
    } catch (const std::exception& e) {
      errors[name] = e.what();
      std::fprintf(stderr, "  error: %s\n", e.what());
    }
  }

  int failed = 0;
  for (const auto& c : criteria()) {
    bool ok = true;
    double seconds = 0.0;
    std::string why;
    for (const auto& s : c.suites) {
      if (errors.count(s)) {
        ok = false;
        why += " " + s + ": " + errors[s] + ";";
        continue;
      }
      const sns::Report& r = reports.at(s);
      seconds += r.runtime_seconds;
      bool any = false;
      for (const auto& row : r.rows) {
        const bool selected =
            c.tags.empty() || std::find(c.tags.begin(), c.tags.end(), row.tag) != c.tags.end();
        if (!selected) continue;
        any = true;
        if (!row.pass) {
          ok = false;
          why += " " + row.tag + "/" + row.quantity + "=" + std::to_string(row.value) + ";";
        }
      }
      if (!any) {
        ok = false;
        why += " " + s + ": no rows;";
      }
    }
    if (seconds > c.limit_seconds) {
      ok = false;
      why += " runtime " + std::to_string(seconds) + " s over " + std::to_string(c.limit_seconds) + " s;";
    }
    if (!ok) ++failed;
    std::printf("criterion %2d %-42s %s (%.1f s, limit %.0f s)%s\n", c.number, c.title.c_str(), ok ? "PASS" : "FAIL",
                seconds, c.limit_seconds, why.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria().size(), failed);
  return failed == 0 ? 0 : 1;
}
