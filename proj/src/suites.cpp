#include "sns/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "sns/errors.hpp"

namespace sns {

void validate(const SuiteConfig& cfg) {
  cfg.grid.validate();
  validate(cfg.solution);
  validate(cfg.solution, cfg.noise);
  if (cfg.solution.n != cfg.grid.n) throw ConfigurationError("exponent dimension differs from grid dimension");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) throw ConfigurationError("epsilon must lie in (0, 1)");
  if (cfg.corpus < 1 || cfg.scalar_paths < 2 || cfg.field_paths < 2 || cfg.moment_paths < 4 ||
      cfg.theorem1_paths < 1 || cfg.theorem2_paths < 1)
    throw ConfigurationError("corpus and ensemble sizes must be positive");
  if (cfg.stored_solutions < 0 || cfg.store_stride < 1) throw ConfigurationError("invalid storage settings");
}

nlohmann::json to_json(const SuiteConfig& c) {
  return {{"grid",
           {{"n", c.grid.n},
            {"L", c.grid.L},
            {"H", c.grid.H},
            {"m_tangential", c.grid.m_tangential},
            {"m_normal", c.grid.m_normal},
            {"dt", c.grid.dt},
            {"T", c.grid.T}}},
          {"seed", c.seed},
          {"solution", {{"p", c.solution.p}, {"q", c.solution.q}, {"alpha", c.solution.alpha}}},
          {"noise", {{"p2", c.noise.p2}, {"alpha2", c.noise.alpha2}}},
          {"epsilon", c.epsilon},
          {"corpus", c.corpus},
          {"scalar_paths", c.scalar_paths},
          {"field_paths", c.field_paths},
          {"moment_paths", c.moment_paths},
          {"theorem1_paths", c.theorem1_paths},
          {"theorem2_paths", c.theorem2_paths},
          {"stored_solutions", c.stored_solutions},
          {"store_stride", c.store_stride},
          {"input", c.input.string()},
          {"out", c.out.string()}};
}

namespace {

template <class T>
void take(const nlohmann::json& obj, const char* key, T& into, std::vector<std::string>& used) {
  if (obj.contains(key)) {
    into = obj.at(key).get<T>();
    used.emplace_back(key);
  }
}

void reject_unknown(const nlohmann::json& obj, const std::vector<std::string>& used, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(used.begin(), used.end(), it.key()) == used.end())
      throw ConfigurationError("unknown configuration key '" + where + it.key() + "'");
}

}  // namespace

SuiteConfig suite_config_from_json(const nlohmann::json& doc, SuiteConfig c) {
  if (!doc.is_object()) throw ConfigurationError("configuration must be a JSON object");
  std::vector<std::string> used;
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    std::vector<std::string> gu;
    take(g, "n", c.grid.n, gu);
    take(g, "L", c.grid.L, gu);
    take(g, "H", c.grid.H, gu);
    take(g, "m_tangential", c.grid.m_tangential, gu);
    take(g, "m_normal", c.grid.m_normal, gu);
    take(g, "dt", c.grid.dt, gu);
    take(g, "T", c.grid.T, gu);
    reject_unknown(g, gu, "grid.");
    used.emplace_back("grid");
  }
  c.solution.n = c.grid.n;
  if (doc.contains("solution")) {
    const auto& s = doc.at("solution");
    std::vector<std::string> su;
    take(s, "p", c.solution.p, su);
    take(s, "q", c.solution.q, su);
    take(s, "alpha", c.solution.alpha, su);
    reject_unknown(s, su, "solution.");
    used.emplace_back("solution");
  }
  if (doc.contains("noise")) {
    const auto& s = doc.at("noise");
    std::vector<std::string> su;
    take(s, "p2", c.noise.p2, su);
    take(s, "alpha2", c.noise.alpha2, su);
    reject_unknown(s, su, "noise.");
    used.emplace_back("noise");
  }
  take(doc, "seed", c.seed, used);
  take(doc, "epsilon", c.epsilon, used);
  take(doc, "corpus", c.corpus, used);
  take(doc, "scalar_paths", c.scalar_paths, used);
  take(doc, "field_paths", c.field_paths, used);
  take(doc, "moment_paths", c.moment_paths, used);
  take(doc, "theorem1_paths", c.theorem1_paths, used);
  take(doc, "theorem2_paths", c.theorem2_paths, used);
  take(doc, "stored_solutions", c.stored_solutions, used);
  take(doc, "store_stride", c.store_stride, used);
  if (doc.contains("input")) {
    c.input = doc.at("input").get<std::string>();
    used.emplace_back("input");
  }
  if (doc.contains("out")) {
    c.out = doc.at("out").get<std::string>();
    used.emplace_back("out");
  }
  reject_unknown(doc, used, "");
  return c;
}

namespace {

const std::map<std::string, std::function<Report(const SuiteConfig&)>>& registry() {
  static const std::map<std::string, std::function<Report(const SuiteConfig&)>> r{
      {"lp-partition", lp_partition_suite}, {"heat-decay", heat_decay_suite},
      {"heat-smoothing", heat_smoothing_suite}, {"hls", hls_suite},
      {"potential", potential_suite},       {"helmholtz", helmholtz_suite},
      {"stokes-linear", stokes_linear_suite}, {"duality", duality_suite},
      {"bdg", bdg_suite},                   {"fixedpoint", fixedpoint_suite},
      {"theorem1", theorem1_suite},         {"theorem2", theorem2_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lp-partition", "heat-decay", "heat-smoothing", "hls",
                                              "potential",    "helmholtz",  "stokes-linear",  "duality",
                                              "bdg",          "fixedpoint", "theorem1",       "theorem2"};
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown suite '" + name + "'");
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  Report r = it->second(cfg);
  r.suite = name;
  for (auto& row : r.rows) row.suite = name;
  r.config = to_json(cfg);
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_report(cfg.out, r);
  return r;
}

}  // namespace sns
