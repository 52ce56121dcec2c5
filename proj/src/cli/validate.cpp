// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "inquire/cli/stages.hpp"
#include "inquire/collect/collector.hpp"
#include "inquire/core/errors.hpp"
#include "inquire/core/history.hpp"
#include "inquire/core/io.hpp"

namespace inquire::cli {

namespace {

struct Checker {
  fs::path root;
  std::vector<std::string> violations;

  void flag(const fs::path& file, const std::string& what) {
    violations.push_back(fs::relative(file, root).string() + ": " + what);
  }

  std::vector<fs::path> files(const fs::path& dir, const std::string& ext) const {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void check_conversations(const fs::path& dir, int n_turns, std::optional<int> t_assess) {
    for (const auto& path : files(dir / "transcripts", ".jsonl")) {
      ConversationHistory h;
      try {
        h = parse_transcript(read_file(path));
      } catch (const ParseError& e) {
        flag(path, std::string("unparseable transcript: ") + e.what());
        continue;
      }
      for (const auto& v : validate_history(h)) flag(path, v);
      if (h.problem_id != path.stem().string()) {
        flag(path, "problem_id '" + h.problem_id + "' does not match the file name");
      }
      const std::size_t expected = static_cast<std::size_t>(1 + 2 * n_turns + (t_assess ? 2 : 0));
      if (n_turns > 0 && h.messages.size() != expected) {
        flag(path, "schedule law: expected " + std::to_string(expected) + " messages, found " +
                       std::to_string(h.messages.size()));
      }
    }
    for (const auto& path : files(dir / "curves", ".jsonl")) {
      std::vector<eval::EvalRecord> curve;
      try {
        curve = parse_curve(read_file(path));
      } catch (const ParseError& e) {
        flag(path, std::string("unparseable curve: ") + e.what());
        continue;
      }
      if (n_turns > 0 && curve.size() != static_cast<std::size_t>(n_turns)) {
        flag(path, "expected " + std::to_string(n_turns) + " eval records, found " + std::to_string(curve.size()));
      }
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& r = curve[i];
        const std::string where = "eval record " + std::to_string(i + 1) + ": ";
        if (r.t != static_cast<int>(i) + 1) flag(path, where + "eval point " + std::to_string(r.t) + " out of order");
        if (r.problem_id != path.stem().string()) flag(path, where + "problem_id does not match the file name");
        if (r.samples.size() != static_cast<std::size_t>(r.k)) flag(path, where + "sample count differs from k");
        if (r.pass != eval::any_correct(r.samples)) flag(path, where + "pass disagrees with the any-correct rule");
      }
    }
  }

  void require(const fs::path& file, const std::string& stage, const std::string& unit) {
    if (!fs::exists(file)) flag(file, "missing although " + stage + " unit '" + unit + "' is marked complete");
  }
};

}  // namespace

std::vector<std::string> validate_run(const fs::path& run_dir) {
  Checker c{run_dir, {}};
  std::optional<RunManifest> m;
  try {
    m = load_manifest(run_dir);
  } catch (const ParseError& e) {
    c.violations.push_back(std::string("manifest.json: ") + e.what());
    return c.violations;
  }
  if (!m) {
    c.violations.push_back("manifest.json: missing (not a run directory)");
    return c.violations;
  }
  const int n_turns = m->config.value("n_student_turns", 0);
  std::optional<int> t_assess;
  if (m->config.contains("t_assess") && m->config.at("t_assess").is_number_integer() &&
      m->config.at("t_assess").get<int>() >= 1) {
    t_assess = m->config.at("t_assess").get<int>();
  }
  c.check_conversations(run_dir, n_turns, t_assess);
  for (int j = 1; j <= n_turns; ++j) {
    const fs::path dir = run_dir / "sweep" / ("pos" + std::to_string(j));
    if (fs::exists(dir)) c.check_conversations(dir, n_turns, j);
  }

  for (const auto& [stage, rec] : m->stages) {
    for (const auto& [unit, u] : rec.units) {
      if (u.status != "complete") continue;
      const auto slash = unit.find('/');
      const std::string id = slash == std::string::npos ? unit : unit.substr(slash + 1);
      const std::string group = slash == std::string::npos ? "" : unit.substr(0, slash);
      if (stage == "interact") {
        c.require(run_dir / "transcripts" / (id + ".jsonl"), stage, unit);
        c.require(run_dir / "curves" / (id + ".jsonl"), stage, unit);
      } else if (stage == "sweep") {
        c.require(run_dir / "sweep" / group / "transcripts" / (id + ".jsonl"), stage, unit);
        c.require(run_dir / "sweep" / group / "curves" / (id + ".jsonl"), stage, unit);
      } else if (stage == "filter") {
        c.require(run_dir / "filter" / (id + ".json"), stage, unit);
      } else if (stage == "collect") {
        c.require(run_dir / "collected" / (id + ".json"), stage, unit);
      } else if (stage == "judge") {
        c.require(run_dir / "judgements" / group / (id + ".jsonl"), stage, unit);
      }
    }
  }

  const fs::path sft = run_dir / "datasets" / "sft.jsonl";
  const fs::path dpo = run_dir / "datasets" / "dpo.jsonl";
  try {
    if (fs::exists(sft)) collect::import_sft(sft);
  } catch (const ParseError& e) {
    c.flag(sft, e.what());
  }
  try {
    if (fs::exists(dpo)) collect::import_dpo(dpo);
  } catch (const ParseError& e) {
    c.flag(dpo, e.what());
  }
  return c.violations;
}

}  // namespace inquire::cli
