// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include "inquire/cli/stages.hpp"
#include "inquire/core/errors.hpp"

namespace inquire::cli {

namespace {

using StageFn = StageOutcome (*)(const RunConfig&, const StageOptions&, std::ostream&);

struct StageCommand {
  const char* name;
  const char* help;
  StageFn fn;
};

constexpr StageCommand kStages[] = {
    {"filter", "Keep teacher-solvable, student-unsolved problems", run_filter},
    {"interact", "Run student-teacher conversations with Pass@k at every turn", run_interact},
    {"sweep-assessment", "Run interact once per assessment position", run_sweep},
    {"collect", "Guided collection of SFT and DPO records", run_collect},
    {"export", "Write the collected SFT and DPO datasets", run_export},
    {"judge", "Score question progress and cross-run similarity with the judge model", run_judge},
    {"report", "Aggregate curves and judgements into CSV and SVG", run_report},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Student-teacher interactive learning harness", "inquire"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> max_problems;
  bool filtered = false;
  std::vector<std::string> overlay;
  std::string export_dir;
  std::string run_dir;

  std::map<CLI::App*, StageFn> dispatch;
  for (const auto& s : kStages) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
    const std::string name = s.name;
    if (name != "export" && name != "report") {
      sub->add_option("--max-problems", max_problems, "Stop after this many pending problems")
          ->check(CLI::NonNegativeNumber);
    }
    if (name == "interact" || name == "sweep-assessment" || name == "collect" || name == "export" || name == "judge") {
      sub->add_flag("--filtered", filtered, "Use the run's filtered problem set");
    }
    if (name == "report") sub->add_option("--overlay", overlay, "Additional run dirs to overlay")->check(CLI::ExistingDirectory);
    if (name == "export") sub->add_option("--out", export_dir, "Output directory (default <run_dir>/datasets)");
    dispatch[sub] = s.fn;
  }
  CLI::App* validate = app.add_subcommand("validate", "Check a run dir's artifacts against their invariants");
  validate->add_option("--run", run_dir, "Run directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      if (!fs::is_directory(run_dir)) {
        err << "validate: " << run_dir << " is not a directory\n";
        return kExitUsage;
      }
      const auto violations = validate_run(run_dir);
      for (const auto& v : violations) err << "invalid: " << v << "\n";
      if (!violations.empty()) return kExitFailure;
      out << "ok: " << run_dir << "\n";
      return kExitOk;
    }
    for (const auto& [sub, fn] : dispatch) {
      if (!sub->parsed()) continue;
      const RunConfig cfg = load_run_config(config_path);
      cfg.validate();
      StageOptions opt;
      opt.max_problems = max_problems;
      opt.use_filtered = filtered;
      for (const auto& o : overlay) opt.overlay_runs.emplace_back(o);
      if (!export_dir.empty()) opt.export_dir = export_dir;
      const StageOutcome outcome = fn(cfg, opt, out);
      if (!outcome.ok()) {
        err << sub->get_name() << ": " << outcome.failed << " problem(s) failed\n";
        for (const auto& d : outcome.diagnostics) err << "  " << d << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ContractError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace inquire::cli
