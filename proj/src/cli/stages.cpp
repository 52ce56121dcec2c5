// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/cli/stages.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "inquire/collect/collector.hpp"
#include "inquire/core/errors.hpp"
#include "inquire/core/history.hpp"
#include "inquire/core/io.hpp"
#include "inquire/core/problem_set.hpp"
#include "inquire/dialogue/engine.hpp"
#include "inquire/judge/analytics.hpp"
#include "inquire/judge/judge.hpp"
#include "inquire/judge/report.hpp"

namespace inquire::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string serialize_curve(const std::vector<eval::EvalRecord>& curve) {
  std::string out;
  for (const auto& r : curve) out += eval::to_json(r).dump() + "\n";
  return out;
}

std::vector<eval::EvalRecord> parse_curve(std::string_view text) {
  std::vector<eval::EvalRecord> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(eval::eval_record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

namespace {

/// Clients share one disk cache under <run_dir>/cache.
class Services {
 public:
  explicit Services(const RunConfig& cfg)
      : cfg_(cfg), cache_(std::make_shared<gateway::ResponseCache>(cfg.run_dir / "cache")), grader_(cfg.sandbox) {}

  gateway::ModelClient& client(const std::string& role) {
    std::lock_guard lock(mu_);
    auto& slot = clients_[role];
    if (!slot) slot = std::make_unique<gateway::ModelClient>(cfg_.endpoint(role), cache_);
    return *slot;
  }
  eval::Grader& grader() { return grader_; }

 private:
  const RunConfig& cfg_;
  std::shared_ptr<gateway::ResponseCache> cache_;
  eval::Grader grader_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<gateway::ModelClient>> clients_;
};

ProblemSet load_problems(const fs::path& path) {
  try {
    return read_problem_set(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("problem set: ") + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ProblemSet stage_problems(const RunConfig& cfg, const StageOptions& opt) {
  if (opt.use_filtered) {
    const fs::path p = cfg.run_dir / "datasets" / "filtered_problems.jsonl";
    if (!fs::exists(p)) throw StageError("--filtered given but " + p.string() + " does not exist; run filter first");
    return load_problems(p);
  }
  if (cfg.problems_path.empty()) throw ConfigError("config has no 'problems' path");
  return load_problems(cfg.problems_path);
}

const Problem& problem_for_unit(const ProblemSet& problems, const std::string& unit) {
  const auto slash = unit.rfind('/');
  const std::string id = slash == std::string::npos ? unit : unit.substr(slash + 1);
  const Problem* p = find_problem(problems, id);
  if (!p) throw ContractError("unknown problem id " + id);
  return *p;
}

/// Runs the pending subset of `units` (up to max_problems of them) with the
/// configured parallelism, recording each outcome in the manifest as it
/// lands. Config errors raised by a unit abort the stage after the workers
/// drain.
void run_units(const RunConfig& cfg, RunManifest& m, Stage stage, const std::vector<std::string>& units,
               const StageOptions& opt, const std::function<void(const std::string&)>& work, StageOutcome& out,
               std::ostream& log) {
  std::vector<std::string> pending;
  for (const auto& u : units) {
    if (m.unit_complete(stage, u)) {
      ++out.reused;
    } else {
      pending.push_back(u);
    }
  }
  if (opt.max_problems && static_cast<int>(pending.size()) > *opt.max_problems) {
    out.deferred = static_cast<int>(pending.size()) - *opt.max_problems;
    pending.resize(static_cast<std::size_t>(*opt.max_problems));
  }

  std::mutex mu;
  std::exception_ptr fatal;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      {
        std::lock_guard lock(mu);
        if (fatal) return;
      }
      const std::string& unit = pending[i];
      UnitStatus status;
      try {
        work(unit);
        status = {"complete", utc_timestamp(), ""};
      } catch (const ConfigError&) {
        std::lock_guard lock(mu);
        if (!fatal) fatal = std::current_exception();
        return;
      } catch (const Error& e) {
        status = {"failed", utc_timestamp(), e.what()};
      }
      std::lock_guard lock(mu);
      m.stage(stage).units[unit] = status;
      if (status.status == "complete") {
        ++out.ran;
        log << to_string(stage) << ": " << unit << " done\n";
      } else {
        ++out.failed;
        out.diagnostics.push_back(unit + ": " + status.error);
        log << to_string(stage) << ": " << unit << " FAILED: " << status.error << "\n";
      }
      save_manifest(cfg.run_dir, m);
    }
  };
  const int n_workers = std::max(1, std::min<int>(cfg.parallelism, static_cast<int>(pending.size())));
  std::vector<std::thread> threads;
  for (int w = 1; w < n_workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (fatal) std::rethrow_exception(fatal);

  StageRecord& rec = m.stage(stage);
  const bool all_done = std::all_of(units.begin(), units.end(), [&](const auto& u) { return m.unit_complete(stage, u); });
  const std::string status = all_done ? "complete" : out.failed > 0 ? "failed" : "partial";
  if (rec.status != status) {
    rec.status = status;
    rec.completed_at = all_done ? utc_timestamp() : "";
  }
  save_manifest(cfg.run_dir, m);
  log << to_string(stage) << ": " << out.ran << " ran, " << out.reused << " reused, " << out.failed << " failed";
  if (out.deferred > 0) log << ", " << out.deferred << " deferred";
  log << "\n";
}

std::vector<std::string> ids_of(const ProblemSet& problems) {
  std::vector<std::string> ids;
  for (const auto& p : problems) ids.push_back(p.id);
  return ids;
}

void write_interaction(const fs::path& dir, const dialogue::InteractionResult& r) {
  write_if_changed(dir / "transcripts" / (r.problem_id + ".jsonl"), serialize_transcript(r.transcript));
  write_if_changed(dir / "curves" / (r.problem_id + ".jsonl"), serialize_curve(r.curve));
}

std::vector<std::string> completed_units(const RunManifest& m, Stage s) {
  std::vector<std::string> ids;
  const auto st = m.stages.find(std::string(to_string(s)));
  if (st == m.stages.end()) return ids;
  for (const auto& [id, u] : st->second.units) {
    if (u.status == "complete") ids.push_back(id);
  }
  return ids;
}

}  // namespace

StageOutcome run_filter(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  const ProblemSet problems = stage_problems(cfg, StageOptions{});
  Services svc(cfg);
  const collect::FilterSettings fs_{cfg.eval_k, cfg.sampling, cfg.filter_mode};
  StageOutcome out;
  run_units(cfg, m, Stage::filter, ids_of(problems), opt, [&](const std::string& id) {
    const Problem& p = problem_for_unit(problems, id);
    const auto d = collect::filter_problem(p, fs_, svc.client("student"), svc.client("solver"), svc.grader());
    write_if_changed(cfg.run_dir / "filter" / (id + ".json"), collect::to_json(d).dump(2) + "\n");
  }, out, log);

  if (m.stage(Stage::filter).status == "complete") {
    std::string decisions;
    ProblemSet kept;
    for (const auto& p : problems) {
      const json d = json::parse(read_file(cfg.run_dir / "filter" / (p.id + ".json")));
      decisions += d.dump() + "\n";
      if (d.at("kept").get<bool>()) kept.push_back(p);
    }
    write_if_changed(cfg.run_dir / "datasets" / "filter_decisions.jsonl", decisions);
    write_if_changed(cfg.run_dir / "datasets" / "filtered_problems.jsonl", serialize_problem_set(kept));
    log << "filter: kept " << kept.size() << " of " << problems.size() << "\n";
  }
  return out;
}

StageOutcome run_interact(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  const auto settings = dialogue::InteractionSettings::from(cfg);
  settings.validate();
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  const ProblemSet problems = stage_problems(cfg, opt);
  Services svc(cfg);
  StageOutcome out;
  run_units(cfg, m, Stage::interact, ids_of(problems), opt, [&](const std::string& id) {
    const Problem& p = problem_for_unit(problems, id);
    const fs::path checkpoint = cfg.run_dir / "checkpoints" / (id + ".json");
    auto on_checkpoint = [&](const dialogue::InteractionResult& partial) {
      ordered_json j;
      j["problem_id"] = id;
      j["messages"] = messages_to_json(partial.transcript);
      j["curve"] = ordered_json::array();
      for (const auto& r : partial.curve) j["curve"].push_back(eval::to_json(r));
      write_file_atomic(checkpoint, j.dump() + "\n");
    };
    const auto r = dialogue::run_interaction(p, settings, svc.client("student"), svc.client("teacher"),
                                             svc.grader(), on_checkpoint);
    write_interaction(cfg.run_dir, r);
    if (r.assessment) {
      write_if_changed(cfg.run_dir / "assessments" / (id + ".json"), dialogue::to_json(*r.assessment).dump(2) + "\n");
    }
    fs::remove(checkpoint);
  }, out, log);
  return out;
}

StageOutcome run_sweep(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  auto base = dialogue::InteractionSettings::from(cfg);
  base.t_assess = 1;
  base.validate();
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  const ProblemSet problems = stage_problems(cfg, opt);
  Services svc(cfg);
  std::vector<std::string> units;
  for (int j = 1; j <= cfg.n_student_turns; ++j) {
    for (const auto& p : problems) units.push_back("pos" + std::to_string(j) + "/" + p.id);
  }
  StageOutcome out;
  run_units(cfg, m, Stage::sweep, units, opt, [&](const std::string& unit) {
    const Problem& p = problem_for_unit(problems, unit);
    auto s = base;
    s.t_assess = std::stoi(unit.substr(3, unit.find('/') - 3));
    const auto r = dialogue::run_interaction(p, s, svc.client("student"), svc.client("teacher"), svc.grader());
    write_interaction(cfg.run_dir / "sweep" / unit.substr(0, unit.find('/')), r);
  }, out, log);
  return out;
}

StageOutcome run_collect(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  cfg.validate(true);
  const auto settings = collect::CollectSettings::from(cfg);
  settings.validate();
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  const ProblemSet problems = stage_problems(cfg, opt);
  Services svc(cfg);
  StageOutcome out;
  run_units(cfg, m, Stage::collect, ids_of(problems), opt, [&](const std::string& id) {
    const Problem& p = problem_for_unit(problems, id);
    const auto r = collect::collect_guided(p, settings, svc.client("guide"), svc.client("teacher"),
                                           svc.client("student"), svc.grader());
    ordered_json j;
    j["problem_id"] = r.problem_id;
    j["trajectory"] = messages_to_json(r.trajectory);
    j["exchanges"] = ordered_json::array();
    for (const auto& e : r.exchanges) j["exchanges"].push_back(collect::to_json(e));
    j["sft"] = ordered_json::array();
    for (const auto& s : r.sft) j["sft"].push_back(collect::to_json(s));
    j["dpo"] = ordered_json::array();
    for (const auto& d : r.dpo) j["dpo"].push_back(collect::to_json(d));
    write_if_changed(cfg.run_dir / "collected" / (id + ".json"), j.dump(2) + "\n");
  }, out, log);
  return out;
}

StageOutcome run_export(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  if (m.stage(Stage::collect).status != "complete") {
    throw StageError("export needs a complete collect stage (status: " + m.stage(Stage::collect).status + ")");
  }
  const ProblemSet problems = stage_problems(cfg, opt);
  std::vector<collect::SFTRecord> sft;
  std::vector<collect::DPORecord> dpo;
  for (const auto& p : problems) {
    const fs::path path = cfg.run_dir / "collected" / (p.id + ".json");
    json j;
    try {
      j = json::parse(read_file(path));
      for (const auto& r : j.at("sft")) sft.push_back(collect::sft_record_from_json(r));
      for (const auto& r : j.at("dpo")) dpo.push_back(collect::dpo_record_from_json(r));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  const fs::path dir = opt.export_dir.value_or(cfg.run_dir / "datasets");
  write_if_changed(dir / "sft.jsonl", collect::serialize_sft(sft));
  write_if_changed(dir / "dpo.jsonl", collect::serialize_dpo(dpo));
  log << "export: " << sft.size() << " SFT records, " << dpo.size() << " DPO pairs -> " << dir.string() << "\n";
  StageOutcome out;
  out.ran = 1;
  return out;
}

StageOutcome run_judge(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  cfg.endpoint("judge");
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  const ProblemSet problems = stage_problems(cfg, opt);
  const auto interacted = completed_units(m, Stage::interact);
  if (interacted.empty()) throw StageError("judge needs completed interact transcripts in " + cfg.run_dir.string());
  Services svc(cfg);
  const judge::JudgeOptions jopt{cfg.judge.parse_retries, cfg.judge_sampling};

  std::vector<std::string> units;
  for (const auto& id : interacted) units.push_back("progress/" + id);
  std::optional<fs::path> other = cfg.judge.compare_run;
  if (other) {
    std::vector<std::string> shared;
    for (const auto& id : interacted) {
      if (fs::exists(*other / "transcripts" / (id + ".jsonl"))) shared.push_back(id);
    }
    if (shared.empty()) throw StageError("compare_run " + other->string() + " shares no transcripts with this run");
    if (static_cast<int>(shared.size()) > cfg.judge.similarity_problems) {
      shared.resize(static_cast<std::size_t>(cfg.judge.similarity_problems));
    }
    for (const auto& id : shared) units.push_back("similarity/" + id);
  }

  auto judged_line = [](ordered_json head, const judge::JudgeResult& r) {
    const ordered_json body = judge::to_json(r);
    for (const auto& [k, v] : body.items()) head[k] = v;
    return head.dump() + "\n";
  };

  StageOutcome out;
  run_units(cfg, m, Stage::judge, units, opt, [&](const std::string& unit) {
    const Problem& p = problem_for_unit(problems, unit);
    auto& client = svc.client("judge");
    const auto mine = judge::student_questions(
        parse_transcript(read_file(cfg.run_dir / "transcripts" / (p.id + ".jsonl"))));
    std::string lines;
    if (unit.starts_with("progress/")) {
      std::vector<std::future<judge::JudgeResult>> jobs;
      for (std::size_t t = 0; t < mine.size(); ++t) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
          return judge::judge_progress(client, p, mine[t], jopt, static_cast<int>(t) + 1);
        }));
      }
      for (std::size_t t = 0; t < jobs.size(); ++t) {
        ordered_json head;
        head["problem_id"] = p.id;
        head["turn"] = t + 1;
        lines += judged_line(head, jobs[t].get());
      }
    } else {
      const auto theirs = judge::student_questions(
          parse_transcript(read_file(*other / "transcripts" / (p.id + ".jsonl"))));
      std::vector<std::future<judge::JudgeResult>> jobs;
      for (std::size_t a = 0; a < mine.size(); ++a) {
        for (std::size_t b = 0; b < theirs.size(); ++b) {
          jobs.push_back(std::async(std::launch::async, [&, a, b] {
            return judge::judge_similarity(client, p, mine[a], theirs[b], jopt, static_cast<int>(a) + 1);
          }));
        }
      }
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        ordered_json head;
        head["problem_id"] = p.id;
        head["turn_a"] = i / theirs.size() + 1;
        head["turn_b"] = i % theirs.size() + 1;
        lines += judged_line(head, jobs[i].get());
      }
    }
    write_if_changed(cfg.run_dir / "judgements" / unit.substr(0, unit.find('/')) / (p.id + ".jsonl"), lines);
  }, out, log);
  return out;
}

namespace {

struct RunData {
  fs::path dir;
  RunManifest manifest;
  int n_turns = 0;
};

RunData load_run_data(const fs::path& dir) {
  auto m = load_manifest(dir);
  if (!m) throw StageError("no manifest in " + dir.string());
  RunData d{dir, *m, m->config.value("n_student_turns", 0)};
  return d;
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::vector<json> rows;
  std::size_t line_no = 0;
  const std::string text = read_file(path);
  for (auto line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
  }
  return rows;
}

std::optional<double> mean_of(double sum, int n) {
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace

StageOutcome run_report(const RunConfig& cfg, const StageOptions& opt, std::ostream& log) {
  RunLock lock(cfg.run_dir);
  RunManifest m = open_run(cfg);
  std::vector<RunData> runs{load_run_data(cfg.run_dir)};
  for (const auto& dir : opt.overlay_runs) runs.push_back(load_run_data(dir));
  const fs::path out_dir = cfg.run_dir / "reports";
  std::vector<std::string> written;
  bool changed = false;
  auto emit = [&](const std::string& name, const std::string& content) {
    changed |= write_if_changed(out_dir / name, content);
    written.push_back(name);
  };

  // Pass@k curves, one per run with interact output.
  std::vector<judge::CurveSummary> summaries;
  for (const auto& r : runs) {
    std::vector<std::vector<eval::EvalRecord>> curves;
    for (const auto& id : completed_units(r.manifest, Stage::interact)) {
      curves.push_back(parse_curve(read_file(r.dir / "curves" / (id + ".jsonl"))));
    }
    if (!curves.empty()) summaries.push_back(judge::summarize_curves(r.manifest.label, curves, r.n_turns));
  }
  if (!summaries.empty()) {
    const std::string csv = judge::pass_curves_csv(summaries);
    std::vector<judge::Series> series;
    for (const auto& s : summaries) series.push_back({s.label, {s.mean_pass.begin(), s.mean_pass.end()}});
    emit("pass_curves.csv", csv);
    emit("pass_curves.svg", judge::svg_line_chart("Pass@k by turn", "mean Pass@k", series, csv));
    if (summaries.size() > 1) {
      const bool same_length = std::all_of(summaries.begin(), summaries.end(), [&](const auto& s) {
        return s.mean_pass.size() == summaries[0].mean_pass.size();
      });
      if (same_length) {
        emit("turn_efficiency.csv", judge::turn_efficiency_csv(
                                        summaries[0], {summaries.begin() + 1, summaries.end()}));
      } else {
        log << "report: runs differ in turn count; turn_efficiency.csv skipped\n";
      }
    }
  }

  // Judge progress.
  std::vector<judge::JudgedCurve> judged;
  for (const auto& r : runs) {
    const fs::path dir = r.dir / "judgements" / "progress";
    if (!fs::exists(dir)) continue;
    judge::JudgedCurve c{r.manifest.label, {}, {}, {}};
    std::vector<double> sum(static_cast<std::size_t>(r.n_turns), 0.0);
    c.n_judged.assign(sum.size(), 0);
    c.n_missing.assign(sum.size(), 0);
    for (const auto& id : completed_units(r.manifest, Stage::judge)) {
      if (!id.starts_with("progress/")) continue;
      for (const auto& row : read_jsonl(dir / (id.substr(9) + ".jsonl"))) {
        const auto t = row.at("turn").get<std::size_t>() - 1;
        if (t >= sum.size()) continue;
        if (row.at("missing").get<bool>()) {
          ++c.n_missing[t];
        } else {
          sum[t] += row.at("score").get<double>();
          ++c.n_judged[t];
        }
      }
    }
    for (std::size_t t = 0; t < sum.size(); ++t) c.mean.push_back(mean_of(sum[t], c.n_judged[t]));
    judged.push_back(std::move(c));
  }
  if (!judged.empty()) {
    const std::string csv = judge::judged_curves_csv(judged, "mean_progress");
    std::vector<judge::Series> series;
    for (const auto& c : judged) series.push_back({c.label, c.mean});
    emit("progress.csv", csv);
    emit("progress.svg", judge::svg_line_chart("Judged progress by turn", "mean progress", series, csv));
  }

  // Similarity heatmap against compare_run.
  {
    const fs::path dir = cfg.run_dir / "judgements" / "similarity";
    std::vector<json> rows;
    for (const auto& id : completed_units(m, Stage::judge)) {
      if (!id.starts_with("similarity/")) continue;
      for (auto& row : read_jsonl(dir / (id.substr(11) + ".jsonl"))) rows.push_back(std::move(row));
    }
    if (!rows.empty()) {
      std::size_t na = 0;
      std::size_t nb = 0;
      for (const auto& row : rows) {
        na = std::max(na, row.at("turn_a").get<std::size_t>());
        nb = std::max(nb, row.at("turn_b").get<std::size_t>());
      }
      judge::SimilarityMatrix mat;
      mat.label_a = m.label;
      if (cfg.judge.compare_run) {
        if (auto other = load_manifest(*cfg.judge.compare_run)) mat.label_b = other->label;
      }
      std::vector<std::vector<double>> sum(na, std::vector<double>(nb, 0.0));
      mat.n_judged.assign(na, std::vector<int>(nb, 0));
      mat.n_missing.assign(na, std::vector<int>(nb, 0));
      for (const auto& row : rows) {
        const auto a = row.at("turn_a").get<std::size_t>() - 1;
        const auto b = row.at("turn_b").get<std::size_t>() - 1;
        if (row.at("missing").get<bool>()) {
          ++mat.n_missing[a][b];
        } else {
          sum[a][b] += row.at("score").get<double>();
          ++mat.n_judged[a][b];
        }
      }
      mat.mean.assign(na, {});
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) mat.mean[a].push_back(mean_of(sum[a][b], mat.n_judged[a][b]));
      }
      const std::string csv = judge::heatmap_csv(mat);
      emit("similarity_heatmap.csv", csv);
      emit("similarity_heatmap.svg",
           judge::svg_heatmap("Question similarity", mat.label_a + " turn", mat.label_b + " turn", mat.mean, csv));
    }
  }

  // Assessment positions.
  {
    const auto units = completed_units(m, Stage::sweep);
    if (!units.empty()) {
      const int n = runs[0].n_turns;
      std::vector<std::vector<double>> mean(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
      for (int j = 1; j <= n; ++j) {
        std::vector<std::vector<eval::EvalRecord>> curves;
        const std::string prefix = "pos" + std::to_string(j) + "/";
        for (const auto& u : units) {
          if (!u.starts_with(prefix)) continue;
          curves.push_back(parse_curve(
              read_file(cfg.run_dir / "sweep" / prefix / "curves" / (u.substr(prefix.size()) + ".jsonl"))));
        }
        mean[static_cast<std::size_t>(j - 1)] = judge::summarize_curves(prefix, curves, n).mean_pass;
      }
      const std::string csv = judge::positions_csv(mean);
      std::vector<judge::Series> series;
      for (int j = 1; j <= n; ++j) {
        series.push_back({"t_assess=" + std::to_string(j),
                          {mean[static_cast<std::size_t>(j - 1)].begin(), mean[static_cast<std::size_t>(j - 1)].end()}});
      }
      emit("assessment_positions.csv", csv);
      emit("assessment_positions.svg", judge::svg_line_chart("Pass@k by assessment position", "mean Pass@k", series, csv));
    }
  }

  // Leak audit over this run's transcripts.
  {
    const auto ids = completed_units(m, Stage::interact);
    if (!ids.empty()) {
      const ProblemSet problems = stage_problems(cfg, StageOptions{});
      std::vector<ConversationHistory> transcripts;
      for (const auto& id : ids) {
        transcripts.push_back(parse_transcript(read_file(cfg.run_dir / "transcripts" / (id + ".jsonl"))));
      }
      std::string lines;
      for (const auto& f : judge::leak_audit(transcripts, problems)) lines += judge::to_json(f).dump() + "\n";
      emit("leak_audit.jsonl", lines);
    }
  }

  std::string summary;
  if (written.empty()) {
    summary = "no data\n";
  } else {
    for (const auto& w : written) summary += w + "\n";
  }
  changed |= write_if_changed(out_dir / "summary.txt", summary);
  log << "report: " << (written.empty() ? "no data" : std::to_string(written.size()) + " files") << " in "
      << out_dir.string() << "\n";

  StageRecord& rec = m.stage(Stage::report);
  if (rec.status != "complete" || changed) {
    rec.status = "complete";
    rec.completed_at = utc_timestamp();
  }
  save_manifest(cfg.run_dir, m);
  StageOutcome out;
  out.ran = 1;
  return out;
}

}  // namespace inquire::cli
