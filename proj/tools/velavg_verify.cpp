// velavg-verify: runs the verification suite from a config file.
//
// Exit status: 0 every bound check passed, 1 some check was violated (the
// violating reports are listed on stderr), 2 invalid configuration or a run
// that could not be carried out.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "velavg/cli/config.hpp"
#include "velavg/cli/suite.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  int threads = -1;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
  auto* opt = cmd->add_option(config_required ? "config" : "--config,-c", o.config,
                              "key = value config file");
  if (config_required) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out,-o", o.out, "output directory (overrides 'output')");
  cmd->add_option("--threads,-j", o.threads, "worker threads, 0 = all cores");
  cmd->add_option("--set,-s", o.sets, "override any config key: key=value (repeatable)");
}

int run(const Overrides& o, const std::vector<std::string>& experiments) {
  try {
    velavg::RunConfig cfg = o.config.empty() ? velavg::RunConfig{} : velavg::load_config(o.config);
    std::vector<std::string> sets;
    if (!experiments.empty()) {
      std::string list;
      for (const std::string& e : experiments) list += (list.empty() ? "" : ",") + e;
      sets.push_back("experiments=" + list);
    }
    if (!o.out.empty()) sets.push_back("output=" + o.out);
    if (o.threads >= 0) sets.push_back("threads=" + std::to_string(o.threads));
    sets.insert(sets.end(), o.sets.begin(), o.sets.end());
    cfg = velavg::with_overrides(cfg, sets);

    const velavg::SuiteResult result = velavg::run_suite(cfg);
    std::size_t passed = 0;
    for (const auto& r : result.reports) passed += r.pass;
    std::cout << "checks passed: " << passed << '/' << result.reports.size() << '\n';
    for (const std::string& f : result.files) std::cout << "wrote " << f << '\n';
    const auto bad = result.violations();
    for (const std::string& name : bad) std::cerr << "violated: " << name << '\n';
    return velavg::suite_exit_code(result);
  } catch (const velavg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Velocity-averaging verification suite"};
  app.require_subcommand(1);

  const std::map<std::string, std::vector<std::string>> single{
      {"lemma3", {"lemma3"}},     {"lemma4", {"lemma4"}},       {"lemma2", {"lemma2"}},
      {"theorem1", {"theorem1"}}, {"scaling", {"scaling"}},     {"lq-bounds", {"lq-bounds"}},
      {"split", {"fourier-split"}}, {"all", {"all"}}};

  std::map<std::string, Overrides> overrides;
  CLI::App* run_cmd = app.add_subcommand("run", "run the experiments selected by a config file");
  add_common(run_cmd, overrides["run"], true);
  for (const auto& [name, exps] : single) {
    CLI::App* cmd = app.add_subcommand(name, name == "all" ? "run every experiment"
                                                           : "run only the " + exps.front() + " experiment");
    add_common(cmd, overrides[name], false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (run_cmd->parsed()) return run(overrides["run"], {});
  for (const auto& [name, exps] : single) {
    if (app.got_subcommand(name)) return run(overrides[name], exps);
  }
  return 2;
}
