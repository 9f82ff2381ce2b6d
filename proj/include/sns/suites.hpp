#ifndef SNS_SUITES_HPP
#define SNS_SUITES_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sns/exponents.hpp"
#include "sns/grid.hpp"
#include "sns/report.hpp"

namespace sns {

struct SuiteConfig {
  GridSpec grid{};                  // n = 2, L = H = pi, 128^2, dt = 1e-3, T = 0.25
  std::uint64_t seed = 1;
  SolutionExponents solution{};     // (n, p, q, alpha) = (2, 4, 8, 1/8)
  NoiseExponents noise{};           // (p2, alpha2) = (2, 3/8)
  double epsilon = 0.1;
  int corpus = 20;                  // random fields per refinement study
  int scalar_paths = 10000;         // scalar Ito isometry
  int field_paths = 2000;           // field isometry and band moments
  int moment_paths = 4000;          // weighted moment ratio, halved for the stability check
  int theorem1_paths = 200;
  int theorem2_paths = 50;
  int stored_solutions = 1;         // theorem1 paths whose solution series is written
  int store_stride = 25;
  std::filesystem::path input;      // theorem1 run directory for theorem2
  std::filesystem::path out = "sns-out";
};

void validate(const SuiteConfig& cfg);
nlohmann::json to_json(const SuiteConfig& cfg);
// Missing keys keep the values of base; unknown keys are rejected.
SuiteConfig suite_config_from_json(const nlohmann::json& doc, SuiteConfig base = {});

const std::vector<std::string>& suite_names();

// Runs one suite, writes <out>/<suite>.csv and .json and returns the report.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

Report lp_partition_suite(const SuiteConfig& cfg);
Report heat_decay_suite(const SuiteConfig& cfg);
Report heat_smoothing_suite(const SuiteConfig& cfg);
Report hls_suite(const SuiteConfig& cfg);
Report potential_suite(const SuiteConfig& cfg);
Report helmholtz_suite(const SuiteConfig& cfg);
Report stokes_linear_suite(const SuiteConfig& cfg);
Report duality_suite(const SuiteConfig& cfg);
Report bdg_suite(const SuiteConfig& cfg);
Report fixedpoint_suite(const SuiteConfig& cfg);
// Also writes <out>/theorem1/manifest.json (and stored solution series)
// for a later theorem2 run.
Report theorem1_suite(const SuiteConfig& cfg);
Report theorem2_suite(const SuiteConfig& cfg);

// Newtonian Hessian of the zero extension (or mirror image) by direct
// summation of the potential followed by fourth-order differences; rows and
// columns within two nodes of the slab edge are left at zero. images > 0
// adds the periodic translates of the doubled torus, |a|, |b| <= images;
// the data should then have zero mean.
ScalarField direct_newtonian_hessian(const ScalarField& half, int i, int j, bool reflected, int images = 0);

}  // namespace sns

#endif
