#pragma once

#include <cstdlib>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "autfix.hpp"
#include "chartables.hpp"
#include "dade.hpp"
#include "error.hpp"
#include "paramsets.hpp"
#include "report.hpp"
#include "rootdatum.hpp"
#include "tabledsl.hpp"

namespace dc {

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"lemmas", "params", "fixrows", "dade", "weyl", "classes", "relations"};
  return names;
}

struct RunConfig {
  std::string data_dir;
  std::vector<unsigned> n_list{1};
  Mode mode = Mode::Formula;
  uint64_t budget = kDefaultBudget;
  std::set<std::string> checks;
  unsigned workers = 1;
  std::string report_path;

  static constexpr uint64_t kMinBudget = uint64_t(1) << 16;

  void validate() const {
    if (n_list.empty()) throw Error(ErrorKind::Config, "no values of n");
    for (unsigned n : n_list)
      if (n == 0) throw Error(ErrorKind::Config, "n must be positive");
    if (budget < kMinBudget) throw Error(ErrorKind::Config, "budget must be at least 2^16");
    if (workers == 0) throw Error(ErrorKind::Config, "workers must be positive");
    for (const auto& c : checks)
      if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
        throw Error(ErrorKind::Config, "unknown check '" + c + "'");
  }
  unsigned max_n() const { return *std::max_element(n_list.begin(), n_list.end()); }
};

inline Mode parse_mode(const std::string& s) {
  if (s == "formula") return Mode::Formula;
  if (s == "bruteforce") return Mode::Bruteforce;
  if (s == "both") return Mode::Both;
  throw Error(ErrorKind::Config, "unknown mode '" + s + "'");
}

inline std::string default_data_dir() {
  if (const char* env = std::getenv("DADE_DATA_DIR"); env && *env) return env;
  return "data";
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs the selected checks; n-indexed checks run for every n in the list, the
// others once with the largest n as their bound.
inline Report run_checks(const Model& m, const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  auto want = [&](const char* c) { return cfg.checks.empty() || cfg.checks.count(c); };
  if (want("lemmas")) rep.append(verify_gcd_lemmas(cfg.max_n()));
  for (unsigned n : cfg.n_list) {
    if (want("params")) rep.append(cardinality_check(m, n, cfg.budget));
    if (want("fixrows")) rep.append(fixrow_check(m, n, cfg.budget, cfg.workers));
    if (want("dade")) {
      rep.append(verify_dade(m, n, cfg.mode, cfg.budget, cfg.workers));
      rep.append(ledger_consistency(m, n));
    }
  }
  if (want("weyl")) rep.append(verify_weyl(m, std::max(5u, cfg.max_n())));
  if (want("classes")) rep.append(verify_classes(m, std::min(3u, cfg.max_n())));
  if (want("relations")) rep.append(verify_relations(m, std::min(2u, cfg.max_n())));
  return rep;
}

}  // namespace dc
