// dadecheck: run the verification checks over the shipped tables.
//
//   dadecheck verify dade --n 1 --mode both
//   dadecheck verify all --max-n 2 --report out.json
//   dadecheck params --n 1 --set GI_27 --list
//   dadecheck report out.json
//
// Exit status: 0 when every check passes, 1 on a failed check, 2 on a
// configuration or parse error.

#include <CLI11.hpp>

#include <dadecheck/run.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

struct Options {
  std::vector<unsigned> n;
  unsigned max_n = 0;
  std::string mode = "formula";
  uint64_t budget = dc::kDefaultBudget;
  unsigned workers = dc::default_workers();
  std::string data_dir = dc::default_data_dir();
  std::string report;
  std::string set;
  bool list = false;
  bool quiet = false;
};

void print_summary(const dc::Report& rep, bool quiet) {
  std::map<std::string, std::array<size_t, 3>> by_check;
  std::vector<std::string> order;
  for (const auto& r : rep.records) {
    if (!by_check.count(r.check)) order.push_back(r.check);
    by_check[r.check][static_cast<int>(r.status)]++;
  }
  for (const auto& r : rep.records) {
    if (r.status != dc::Status::Fail) continue;
    std::cout << "FAIL " << r.check << " " << r.subject << " n=" << r.n;
    if (r.key_value) std::cout << " " << r.key << "=" << *r.key_value;
    std::cout << " expected " << r.expected << " got " << r.actual;
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
  }
  if (quiet) return;
  for (const auto& c : order) {
    const auto& k = by_check[c];
    std::cout << c << ": " << k[0] << " pass, " << k[1] << " fail, " << k[2] << " skip\n";
  }
  std::cout << (rep.ok() ? "OK" : "FAILED") << " (" << rep.records.size() << " records)\n";
}

void write_report(const dc::Report& rep, const std::string& path) {
  if (path.empty()) return;
  const std::string text = dc::to_json(rep).dump(1) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw dc::Error(dc::ErrorKind::Config, "cannot write " + path);
  out << text;
}

dc::RunConfig make_config(const Options& o, const std::string& what) {
  dc::RunConfig cfg;
  cfg.data_dir = o.data_dir;
  if (o.max_n) {
    cfg.n_list.clear();
    for (unsigned n = 1; n <= o.max_n; ++n) cfg.n_list.push_back(n);
  }
  if (!o.n.empty()) cfg.n_list = o.n;
  cfg.mode = dc::parse_mode(o.mode);
  cfg.budget = o.budget;
  cfg.workers = o.workers;
  cfg.report_path = o.report;
  if (what != "all") cfg.checks = {what};
  cfg.validate();
  return cfg;
}

int cmd_verify(const Options& o, const std::string& what) {
  const dc::RunConfig cfg = make_config(o, what);
  const dc::Model m = dc::load_model(cfg.data_dir);
  const dc::Report rep = dc::run_checks(m, cfg);
  write_report(rep, cfg.report_path);
  print_summary(rep, o.quiet || cfg.report_path == "-");
  return rep.ok() ? 0 : 1;
}

int cmd_params(const Options& o) {
  const dc::RunConfig cfg = make_config(o, "params");
  const dc::Model m = dc::load_model(cfg.data_dir);
  if (o.set.empty()) {
    dc::Report rep;
    for (unsigned n : cfg.n_list) rep.append(dc::cardinality_check(m, n, cfg.budget));
    write_report(rep, cfg.report_path);
    for (const auto& r : rep.records)
      std::cout << r.subject << " n=" << r.n << " formula " << r.expected << " enumerated " << r.actual << " "
                << dc::status_name(r.status) << "\n";
    return rep.ok() ? 0 : 1;
  }
  const dc::ParamSetSpec* p = m.paramset(o.set);
  if (!p) throw dc::Error(dc::ErrorKind::DanglingReference, "unknown parameter set " + o.set);
  bool ok = true;
  dc::Report rep;
  for (unsigned n : cfg.n_list) {
    dc::Record r = dc::cardinality_record(*p, n, cfg.budget);
    rep.add(r);
    ok &= r.status != dc::Status::Fail;
    std::cout << p->id << " n=" << n << " formula " << r.expected << " enumerated " << r.actual;
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
    if (!o.list || r.status == dc::Status::Skip) continue;
    const dc::Enumeration en = dc::enumerate_classes(*p, n, cfg.budget);
    for (size_t c = 0; c < en.reps.size(); ++c) {
      const auto x = en.tuple(en.reps[c]);
      std::cout << "  (";
      for (size_t i = 0; i < x.size(); ++i) std::cout << (i ? ", " : "") << x[i];
      std::cout << ")  orbit " << en.sizes[c] << "\n";
    }
  }
  write_report(rep, cfg.report_path);
  return ok ? 0 : 1;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dc::Error(dc::ErrorKind::Config, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw dc::Error(dc::ErrorKind::Config, path + ": " + e.what());
  }
  if (!j.is_array()) throw dc::Error(dc::ErrorKind::Config, path + ": expected a JSON array");
  dc::Report rep;
  for (const auto& x : j) {
    dc::Record r;
    r.check = x.value("check", "");
    r.subject = x.value("subject", "");
    r.n = x.value("n", 0u);
    r.expected = x.value("expected", "");
    r.actual = x.value("actual", "");
    r.note = x.value("note", "");
    for (const char* k : {"t", "u", "d"})
      if (x.contains(k)) r.key = k, r.key_value = x[k].get<long>();
    const std::string s = x.value("status", "fail");
    r.status = s == "pass" ? dc::Status::Pass : s == "skip" ? dc::Status::Skip : dc::Status::Fail;
    rep.add(r);
  }
  print_summary(rep, false);
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for the Ree group tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value settings; flags take precedence");

  Options o;
  app.add_option("--n", o.n, "values of n (comma separated)")->delimiter(',');
  app.add_option("--max-n", o.max_n, "run n = 1..max-n");
  app.add_option("--mode", o.mode, "formula, bruteforce or both")->check(CLI::IsMember({"formula", "bruteforce", "both"}));
  app.add_option("--budget", o.budget, "largest index space to enumerate");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--data-dir", o.data_dir, "directory with the .def tables (default $DADE_DATA_DIR)");
  app.add_option("--report", o.report, "write the JSON report here ('-' for stdout)");
  app.add_flag("--quiet", o.quiet, "print failures only");

  std::string what = "all";
  auto* verify = app.add_subcommand("verify", "run checks");
  verify->add_option("check", what, "dade, lemmas, fixrows, weyl, classes, relations, params or all")
      ->check(CLI::IsMember({"dade", "lemmas", "fixrows", "weyl", "classes", "relations", "params", "all"}));

  auto* params = app.add_subcommand("params", "enumerate parameter sets");
  params->add_option("--set", o.set, "parameter set id");
  params->add_flag("--list", o.list, "print canonical representatives");

  std::string report_file;
  auto* report = app.add_subcommand("report", "summarize a JSON report");
  report->add_option("file", report_file, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(o, what);
    if (*params) return cmd_params(o);
    if (*report) return cmd_report(report_file);
  } catch (const dc::Error& e) {
    std::cerr << "dadecheck: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dadecheck: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
